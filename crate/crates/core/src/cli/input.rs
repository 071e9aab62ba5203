use std::path::Path;

use clap::ValueEnum;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::kernels::TransformKind;
use crate::quad::DecayHint;
use crate::transforms::{synthesized_function, CoefficientSequence, FunctionSpec, TrigPolynomial};

/// Largest number of grid points accepted on the command line.
pub const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Linear,
    Log,
}

/// Parses `a:b:k` (k points from a to b inclusive), a comma list or a
/// single value. Every point must be finite and positive.
pub fn parse_grid(spec: &str, spacing: Spacing) -> Result<Vec<f64>> {
    let spec = spec.trim();
    let points = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "grid '{spec}' is not of the form min:max:points"
            )));
        }
        let lo = parse_f64(parts[0], "grid minimum")?;
        let hi = parse_f64(parts[1], "grid maximum")?;
        let k: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad point count '{}'", parts[2])))?;
        if k == 0 || k > MAX_GRID_POINTS {
            return Err(Error::Parse(format!(
                "point count must be in 1..={MAX_GRID_POINTS}, got {k}"
            )));
        }
        if !(lo > 0.0) || hi < lo {
            return Err(Error::Parse(format!(
                "grid needs 0 < min <= max, got {lo}:{hi}"
            )));
        }
        if k == 1 {
            vec![lo]
        } else {
            let last = (k - 1) as f64;
            (0..k)
                .map(|i| {
                    let s = i as f64 / last;
                    match spacing {
                        Spacing::Linear => lo + (hi - lo) * s,
                        Spacing::Log => lo * (hi / lo).powf(s),
                    }
                })
                .collect()
        }
    } else {
        spec.split(',')
            .map(|p| parse_f64(p, "grid point"))
            .collect::<Result<Vec<f64>>>()?
    };
    if points.is_empty() || points.len() > MAX_GRID_POINTS {
        return Err(Error::Parse(format!(
            "grid must have 1..={MAX_GRID_POINTS} points"
        )));
    }
    if let Some(x) = points.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(Error::Parse(format!("grid point {x} is not positive")));
    }
    Ok(points)
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} '{}'", s.trim())))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("{what} '{}' is not finite", s.trim())));
    }
    Ok(v)
}

/// Inline comma list starting at `start`.
pub fn parse_sequence(text: &str, start: i64) -> Result<CoefficientSequence> {
    let values = text
        .split(',')
        .map(|p| parse_f64(p, "sequence entry"))
        .collect::<Result<Vec<f64>>>()?;
    CoefficientSequence::new(start, values)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceFile {
    start: i64,
    values: Vec<f64>,
}

/// A file holding either `{"start": k, "values": [...]}` or one value per
/// line (blank lines and lines starting with `#` are skipped), the latter
/// starting at `start`.
pub fn read_sequence_file(path: &Path, start: i64) -> Result<CoefficientSequence> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        let f: SequenceFile = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        return CoefficientSequence::new(f.start, f.values);
    }
    let values = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_f64(l, "sequence entry"))
        .collect::<Result<Vec<f64>>>()?;
    CoefficientSequence::new(start, values)
}

/// Functions with a closed form, for `coeffs` and `invert-seq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    /// `e^{-x}`
    Exp,
    /// `e^{-√x}`
    ExpSqrt,
    /// `1/(1+x)²`
    Rational,
}

impl Builtin {
    pub fn function(self) -> FunctionSpec {
        match self {
            Builtin::Exp => {
                FunctionSpec::callable(|x: f64| (-x).exp(), DecayHint::Exponential(1.0))
            }
            Builtin::ExpSqrt => {
                FunctionSpec::callable(|x: f64| (-x.sqrt()).exp(), DecayHint::ExpSqrt(1.0))
            }
            Builtin::Rational => FunctionSpec::callable(
                |x: f64| 1.0 / ((1.0 + x) * (1.0 + x)),
                DecayHint::Algebraic(2.0),
            ),
        }
    }
}

/// Where the function side of `coeffs` / `invert-seq` comes from.
#[derive(Debug, Clone)]
pub enum FunctionSource {
    Psi(TrigPolynomial),
    Builtin(Builtin),
    Synthesized(CoefficientSequence),
}

impl FunctionSource {
    pub fn function(&self, kind: TransformKind) -> Result<FunctionSpec> {
        match self {
            FunctionSource::Psi(p) => Ok(FunctionSpec::psi(kind, p.clone())),
            FunctionSource::Builtin(b) => Ok(b.function()),
            FunctionSource::Synthesized(a) => synthesized_function(kind, a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(
            parse_grid("1:10:5", Spacing::Linear).unwrap(),
            vec![1.0, 3.25, 5.5, 7.75, 10.0]
        );
        let g = parse_grid("1:100:3", Spacing::Log).unwrap();
        assert_eq!(g, vec![1.0, 10.0, 100.0]);
        assert_eq!(
            parse_grid("0.5, 2", Spacing::Linear).unwrap(),
            vec![0.5, 2.0]
        );
        assert_eq!(parse_grid("3", Spacing::Log).unwrap(), vec![3.0]);
        assert!(parse_grid("0:1:3", Spacing::Linear).is_err());
        assert!(parse_grid("1:2:0", Spacing::Linear).is_err());
        assert!(parse_grid("1:2:2000000", Spacing::Linear).is_err());
        assert!(parse_grid("2:1:3", Spacing::Linear).is_err());
        assert!(parse_grid("1,-1", Spacing::Linear).is_err());
        assert!(parse_grid("1:2", Spacing::Linear).is_err());
    }

    #[test]
    fn sequences() {
        let a = parse_sequence("0, 1,0", 1).unwrap();
        assert_eq!(a.get(2), 1.0);
        assert!(parse_sequence("1,x", 1).is_err());

        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.txt");
        std::fs::write(&p, "# unit\n0\n\n1\n0\n").unwrap();
        assert_eq!(read_sequence_file(&p, 1).unwrap(), a);
        let j = dir.path().join("a.json");
        std::fs::write(&j, r#"{"start": 0, "values": [0.5, 2]}"#).unwrap();
        let b = read_sequence_file(&j, 1).unwrap();
        assert_eq!((b.start(), b.get(1)), (0, 2.0));
        std::fs::write(&j, r#"{"start": 0}"#).unwrap();
        assert!(read_sequence_file(&j, 1).is_err());
    }
}
