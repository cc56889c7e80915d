//! Elimination of `t` and the full extraction pipeline.

use super::family::{build_h, build_h_param, total_derivative, ParamFamily};
use super::line::{choose_line, coordinate_normalize, LineMode, ParamLine};
use super::linear::LinearMap;
use super::{origin, ExtractError, ExtractErrorKind, Stage, WebError, WebMode};
use crate::algebra::{
    canonical_normalize, content_wrt, primitive_part_wrt, resultant_wrt, squarefree_wrt, MultiPoly, ResultantMethod, Var,
};
use crate::hypersurface::{is_dicritical, make_hypersurface, Hypersurface};
use crate::io::{InputMode, ProblemInput};
use crate::par::{map_indexed, Execution};

/// One eliminated direction `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Elimination {
    pub j: usize,
    pub g: MultiPoly,
    /// `G_j` did not involve `t`, so no resultant was taken.
    pub t_free: bool,
    /// `R(H, G_j)`, or `G_j` itself on the `t`-free branch.
    pub raw: MultiPoly,
    /// Content with respect to `p_j` that was divided out.
    pub content: MultiPoly,
    pub phi: MultiPoly,
    pub degree: u32,
}

/// `Φ_j(z, p_j)`: the resultant `R(H, G_j)` with respect to `t` (or `G_j`
/// when it is free of `t`), then the `p_j`-primitive part, then its
/// squarefree part, canonically normalized.
pub fn eliminate(f: &ParamFamily, g: &MultiPoly, j: usize, method: ResultantMethod) -> Result<Elimination, WebError> {
    let pj = Var::P(j as u8);
    let t_free = !g.contains(Var::T);
    let raw = if t_free { g.clone() } else { resultant_wrt(&f.h, g, Var::T, method) };
    if raw.is_zero() {
        return Err(WebError::ResultantVanished(j));
    }
    if !raw.contains(pj) {
        return Err(WebError::WebDegenerate(j));
    }
    let pp = primitive_part_wrt(&raw, pj)?;
    let content = content_wrt(&raw, pj)?;
    let phi = canonical_normalize(&squarefree_wrt(&pp, pj)?)?;
    let degree = phi.degree_in(pj);
    if degree == 0 {
        return Err(WebError::WebDegenerate(j));
    }
    Ok(Elimination { j, g: g.clone(), t_free, raw, content, phi, degree })
}

/// Knobs for [`extract_web`] that are not part of the problem itself.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExtractOptions {
    pub method: ResultantMethod,
    pub exec: Execution,
}

/// The extracted web and everything that led to it.
#[derive(Clone, Debug, PartialEq)]
pub struct WebSystem {
    pub n: usize,
    pub mode: WebMode,
    /// `Φ_1, …, Φ_{n-1}` in the working coordinates.
    pub phi: Vec<MultiPoly>,
    pub degrees: Vec<u32>,
    /// `z_old = M z_new`, when the coordinates were changed.
    pub transform: Option<LinearMap>,
    /// The hypersurface in working coordinates (`None` in param mode).
    pub hypersurface: Option<Hypersurface>,
    pub family: ParamFamily,
    /// The line in working coordinates (`None` in param mode).
    pub line: Option<ParamLine>,
    /// `H` expressed in the original coordinates.
    pub h_original: MultiPoly,
    pub eliminations: Vec<Elimination>,
}

impl WebSystem {
    /// Maps a point from original to working coordinates.
    pub fn to_working(&self, z: &[num_complex::Complex64]) -> Vec<num_complex::Complex64> {
        match &self.transform {
            Some(m) => m.inverse().expect("invertible").apply_f64(z),
            None => z.to_vec(),
        }
    }
}

/// Runs the whole pipeline on a problem.
pub fn extract_web(input: &ProblemInput, opts: &ExtractOptions) -> Result<WebSystem, ExtractError> {
    let n = input.n;
    let seed = input.seed.unwrap_or(0);
    let web_err = |stage: Stage| move |e: WebError| ExtractError { stage, kind: ExtractErrorKind::Web(e) };

    let (mode, hyp, transform, family, line) = match input.mode {
        InputMode::Param => {
            let l = input.family().map_err(|e| ExtractError { stage: Stage::Input, kind: e.into() })?;
            let family = build_h_param(&l, n).map_err(web_err(Stage::Family))?;
            (WebMode::Parametrized, None, None, family, None)
        }
        InputMode::Rho => {
            let rho = input.rho().map_err(|e| ExtractError { stage: Stage::Input, kind: e.into() })?;
            let h = make_hypersurface(rho, n).map_err(|e| ExtractError { stage: Stage::Hypersurface, kind: e.into() })?;
            let explicit = match &input.line {
                Some((a, b)) => Some(ParamLine::new(a.clone(), b.clone()).map_err(web_err(Stage::Line))?),
                None => None,
            };
            let (mode, h, m) = if is_dicritical(&h, &origin(n)) {
                (WebMode::Dicritical, h, None)
            } else {
                let (h2, m) = coordinate_normalize(&h, seed).map_err(web_err(Stage::Normalize))?;
                (WebMode::Nondicritical, h2, m)
            };
            let explicit = match (&m, explicit) {
                (Some(m), Some(l)) => Some(l.transformed(&m.inverse().expect("invertible"))),
                (_, l) => l,
            };
            let line_mode = if mode == WebMode::Dicritical { LineMode::Affine } else { LineMode::Origin };
            let line = choose_line(&h, line_mode, seed, explicit.as_ref()).map_err(web_err(Stage::Line))?;
            let family = build_h(&h, &line).map_err(web_err(Stage::Family))?;
            (mode, Some(h), m, family, Some(line))
        }
    };

    let gs: Vec<MultiPoly> =
        (1..n).map(|j| total_derivative(&family, j)).collect::<Result<_, _>>().map_err(web_err(Stage::Derivative))?;
    let eliminations: Vec<Elimination> =
        map_indexed(opts.exec, n - 1, |i| eliminate(&family, &gs[i], i + 1, opts.method))
            .into_iter()
            .collect::<Result<_, _>>()
            .map_err(web_err(Stage::Eliminate))?;

    let h_original = match &transform {
        Some(m) => {
            let back = m.inverse().expect("invertible").pull_back(&family.h);
            canonical_normalize(&back).expect("nonzero")
        }
        None => family.h.clone(),
    };
    Ok(WebSystem {
        n,
        mode,
        phi: eliminations.iter().map(|e| e.phi.clone()).collect(),
        degrees: eliminations.iter().map(|e| e.degree).collect(),
        transform,
        hypersurface: hyp,
        family,
        line,
        h_original,
        eliminations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse::{parse, ParseMode};
    use crate::io::print_canonical;

    fn problem(text: &str) -> ProblemInput {
        ProblemInput::from_text(text).unwrap()
    }

    fn webs(text: &str) -> Vec<String> {
        let w = extract_web(&problem(text), &ExtractOptions::default()).unwrap();
        w.phi.iter().map(print_canonical).collect()
    }

    #[test]
    fn parabola_web() {
        assert_eq!(webs("mode = rho\nn = 2\nexpr = y2^2 - 4*(y1^2 + x2)*y1^2\nline = 0,0;0,1"), ["p1^2 - 4*z2"]);
    }

    #[test]
    fn example3() {
        let text = "mode = rho\nn = 2\nexpr = (z2*zb2*(z1 + zb1)^2 - (z2 + zb2))^2 - 4*z2*zb2\nline = 0,0;0,1";
        let w = extract_web(&problem(text), &ExtractOptions::default()).unwrap();
        assert_eq!(print_canonical(&w.phi[0]), "p1^2 - 4*z2^3");
        let raw = &w.eliminations[0].raw;
        let cofactor = raw.div_exact(&w.phi[0]).unwrap();
        assert!(!cofactor.contains(Var::P(1)));
        let want = parse("-16*z1^2*z2^3*(-1 + z2*z1^2)", ParseMode::Poly, 2).unwrap();
        assert_eq!(canonical_normalize(&cofactor).unwrap(), canonical_normalize(&want).unwrap());
    }

    #[test]
    fn cone_uses_t_free_branch() {
        let text = "mode = rho\nn = 3\nexpr = x1^2 - y1^2 + x2^2 - y2^2 + x3^2 - y3^2\nline = 0,0,0;0,0,1";
        let w = extract_web(&problem(text), &ExtractOptions::default()).unwrap();
        let s: Vec<String> = w.phi.iter().map(print_canonical).collect();
        assert_eq!(s, ["z3*p1 + z1", "z3*p2 + z2"]);
        assert!(w.eliminations.iter().all(|e| e.t_free));
    }

    #[test]
    fn cusp() {
        let text = "mode = rho\nn = 2\nexpr = x1^2 + y1^3\nline = 0,0;1,0";
        let w = extract_web(&problem(text), &ExtractOptions::default()).unwrap();
        assert_eq!(print_canonical(&w.phi[0]), "p1");
        let want = parse("t^3 + t^2*(2*I - 3*z1) + t*(3*z1^2 + 4*I*z1) + 2*I*z1^2 - z1^3", ParseMode::Poly, 2).unwrap();
        assert_eq!(w.h_original, want);
        assert!(w.transform.is_some());
    }

    #[test]
    fn dicritical_cone() {
        let text = "mode = rho\nn = 2\nexpr = z1*zb1 - z2*zb2\nline = 0,1;1,0";
        let w = extract_web(&problem(text), &ExtractOptions::default()).unwrap();
        assert_eq!(w.mode, WebMode::Dicritical);
        assert_eq!(print_canonical(&w.phi[0]), "z1*p1 - z2");
    }

    #[test]
    fn hyperplane_web_is_p() {
        let text = "mode = rho\nn = 3\nexpr = z3 + zb3";
        assert_eq!(webs(text), ["p1", "p2"]);
    }

    #[test]
    fn scaling_invariance_and_determinism() {
        let a = webs("mode = rho\nn = 2\nexpr = y2^2 - 4*(y1^2 + x2)*y1^2\nseed = 9");
        let b = webs("mode = rho\nn = 2\nexpr = -5/3*(y2^2 - 4*(y1^2 + x2)*y1^2)\nseed = 9");
        assert_eq!(a, b);
        assert_eq!(a, webs("mode = rho\nn = 2\nexpr = y2^2 - 4*(y1^2 + x2)*y1^2\nseed = 9"));
    }

    #[test]
    fn methods_agree_and_respect_degree_bound() {
        let text = "mode = rho\nn = 2\nexpr = (z2*zb2*(z1 + zb1)^2 - (z2 + zb2))^2 - 4*z2*zb2\nline = 0,0;0,1";
        let a = extract_web(&problem(text), &ExtractOptions { method: ResultantMethod::Sylvester, ..Default::default() });
        let b = extract_web(&problem(text), &ExtractOptions::default());
        let (a, b) = (a.unwrap(), b.unwrap());
        assert_eq!(a.phi, b.phi);
        assert!(b.degrees[0] <= b.family.degree());
    }

    #[test]
    fn stage_tagged_errors() {
        let e = extract_web(&problem("mode = rho\nn = 2\nexpr = z1"), &ExtractOptions::default()).unwrap_err();
        assert_eq!(e.stage, Stage::Hypersurface);
        assert!(e.is_validation());
        let e = extract_web(&problem("mode = rho\nn = 2\nexpr = z1*zb1 - z2*zb2\nline = 0,0;1,0"), &ExtractOptions::default())
            .unwrap_err();
        assert_eq!(e.stage, Stage::Line);
    }

    #[test]
    fn param_mode_pipeline() {
        let w = webs("mode = param\nn = 2\nexpr = z2 - zeta*z1");
        assert_eq!(w, ["z1*p1 - z2"]);
    }
}
