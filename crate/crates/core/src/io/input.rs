//! Problem files: `key = value` lines with `#` comments.

use crate::algebra::{GaussRational, LaurentPoly, MultiPoly};

use super::parse::{parse, parse_laurent, parse_point, ParseError, ParseMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputMode {
    Rho,
    Param,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemInput {
    pub mode: InputMode,
    pub n: usize,
    pub expr: String,
    pub seed: Option<u64>,
    /// Explicit line `(a, b)`.
    pub line: Option<(Vec<GaussRational>, Vec<GaussRational>)>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InputError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("missing key `{0}`")]
    Missing(&'static str),
    #[error("expr: {0}")]
    Expr(ParseError),
}

impl ProblemInput {
    pub fn from_text(text: &str) -> Result<Self, InputError> {
        let (mut mode, mut n, mut expr, mut seed, mut line) = (None, None, None, None, None);
        for (k, raw) in text.lines().enumerate() {
            let lineno = k + 1;
            let bad = |msg: String| InputError::Malformed { line: lineno, msg };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(bad(format!("expected `key = value`, got `{content}`")));
            };
            let value = value.trim();
            match key.trim() {
                "mode" => {
                    mode = Some(match value {
                        "rho" => InputMode::Rho,
                        "param" => InputMode::Param,
                        _ => return Err(bad(format!("mode must be rho or param, got `{value}`"))),
                    })
                }
                "n" => match value.parse::<usize>() {
                    Ok(v) if (2..=9).contains(&v) => n = Some(v),
                    _ => return Err(bad(format!("n must be an integer in 2..=9, got `{value}`"))),
                },
                "expr" => expr = Some(value.to_string()),
                "seed" => seed = Some(value.parse::<u64>().map_err(|e| bad(format!("seed: {e}")))?),
                "line" => line = Some(parse_line(value).map_err(|e| bad(format!("line: {e}")))?),
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        let input = ProblemInput {
            mode: mode.ok_or(InputError::Missing("mode"))?,
            n: n.ok_or(InputError::Missing("n"))?,
            expr: expr.ok_or(InputError::Missing("expr"))?,
            seed,
            line,
        };
        if let Some((a, _)) = &input.line {
            if a.len() != input.n {
                return Err(InputError::Malformed { line: 0, msg: format!("line has dimension {}, expected {}", a.len(), input.n) });
            }
        }
        Ok(input)
    }

    /// The defining polynomial of a `rho` problem.
    pub fn rho(&self) -> Result<MultiPoly, InputError> {
        parse(&self.expr, ParseMode::Rho, self.n).map_err(InputError::Expr)
    }

    /// The family of a `param` problem.
    pub fn family(&self) -> Result<LaurentPoly, InputError> {
        parse_laurent(&self.expr, ParseMode::Param, self.n).map_err(InputError::Expr)
    }
}

/// Parses `a1,..,an;b1,..,bn`.
pub fn parse_line(text: &str) -> Result<(Vec<GaussRational>, Vec<GaussRational>), String> {
    let Some((a, b)) = text.split_once(';') else {
        return Err("expected `a1,..,an;b1,..,bn`".into());
    };
    let a = parse_point(a).map_err(|e| e.to_string())?;
    let b = parse_point(b).map_err(|e| e.to_string())?;
    if a.len() != b.len() {
        return Err(format!("a has {} entries but b has {}", a.len(), b.len()));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_file() {
        let text = "# cone\nmode = rho\nn = 2\nexpr = z1*zb1 - z2*zb2  # trailing\nline = 0,1;1,0\n";
        let p = ProblemInput::from_text(text).unwrap();
        assert_eq!(p.mode, InputMode::Rho);
        assert_eq!(p.n, 2);
        assert_eq!(p.expr, "z1*zb1 - z2*zb2");
        assert_eq!(p.line.unwrap().1, vec![GaussRational::one(), GaussRational::zero()]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(ProblemInput::from_text("mode = rho\nn = 2\n"), Err(InputError::Missing("expr"))));
        assert!(matches!(ProblemInput::from_text("mode = real\n"), Err(InputError::Malformed { line: 1, .. })));
        assert!(ProblemInput::from_text("mode = rho\nn = 1\nexpr = z1").is_err());
        assert!(ProblemInput::from_text("mode rho").is_err());
    }
}
