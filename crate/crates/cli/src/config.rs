//! Validated run configuration built from the shared flags.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::Serialize;
use twospin::{
    product_state, Anisotropy, ModelKind, ModelParams, ProductPattern, ProductStateAngles,
    TwoSpinState, Vector4,
};

use crate::args::CommonArgs;
use crate::error::CliError;

/// Largest `|‖ψ‖ − 1|` that is silently repaired (with a warning).
pub const NORM_REPAIR_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum StateSpec {
    Amplitudes { amplitudes: [[f64; 2]; 4] },
    Product(ProductStateAngles),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub params: ModelParams,
    pub gamma: f64,
    pub spec: StateSpec,
    pub initial: TwoSpinState,
    pub degrees: bool,
    pub warnings: Vec<String>,
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs) -> Result<Self, CliError> {
        let kind: ModelKind = args.model.parse().map_err(CliError::Usage)?;
        let alpha: Anisotropy = args.alpha.parse()?;
        let params = ModelParams::new(args.coupling, alpha, args.hz, kind)?;
        if !(args.gamma.is_finite() && args.gamma > 0.0) {
            return Err(CliError::Usage(format!(
                "--gamma must be positive, got {}",
                args.gamma
            )));
        }
        let mut warnings = Vec::new();
        let (spec, initial) = match (&args.state, &args.product) {
            (Some(s), None) => {
                let (psi, warning) = parse_state(s)?;
                warnings.extend(warning);
                let amplitudes = psi.amplitudes().map(|z| [z.re, z.im]);
                (StateSpec::Amplitudes { amplitudes }, psi)
            }
            (None, p) => {
                let angles = match p {
                    Some(p) => parse_product(p, args.degrees)?,
                    None => ProductStateAngles::new(FRAC_PI_2, 0.0, ProductPattern::PlusMinus)?,
                };
                (StateSpec::Product(angles), product_state(&angles))
            }
            (Some(_), Some(_)) => {
                return Err(CliError::Usage(
                    "--state and --product are exclusive".into(),
                ))
            }
        };
        for w in &warnings {
            eprintln!("warning: {w}");
        }
        Ok(RunConfig {
            params,
            gamma: args.gamma,
            spec,
            initial,
            degrees: args.degrees,
            warnings,
        })
    }

    pub fn angle(&self, x: f64) -> f64 {
        to_radians(x, self.degrees)
    }

    pub fn echo(&self) -> serde_json::Value {
        serde_json::json!({
            "model": self.params.kind,
            "J": self.params.coupling,
            "alpha": self.params.alpha.to_string(),
            "hz": self.params.field,
            "gamma": self.gamma,
            "state": self.spec,
            "warnings": self.warnings,
        })
    }
}

pub fn to_radians(x: f64, degrees: bool) -> f64 {
    if degrees {
        x.to_radians()
    } else {
        x
    }
}

pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let t = s.trim();
    let z: Complex64 = t.parse().map_err(|_| {
        CliError::Usage(format!("bad amplitude {t:?} (expected re, imj or re±imj)"))
    })?;
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(CliError::Usage(format!("amplitude {t:?} is not finite")));
    }
    Ok(z)
}

/// `re±imj` with the shortest digits that round-trip.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}j", z.re, sign, z.im.abs())
}

/// Four comma-separated amplitudes. A norm within [`NORM_REPAIR_TOL`] of 1
/// is rescaled and reported as a warning.
pub fn parse_state(s: &str) -> Result<(TwoSpinState, Option<String>), CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "--state needs four amplitudes, got {}",
            parts.len()
        )));
    }
    let mut v = Vector4::zero();
    for (k, p) in parts.iter().enumerate() {
        v[k] = parse_complex(p)?;
    }
    let norm = v.norm();
    if (norm - 1.0).abs() > NORM_REPAIR_TOL {
        return Err(twospin::Error::NotNormalized { norm }.into());
    }
    let warning = ((norm - 1.0).abs() > twospin::algebra::EXACT_TOL)
        .then(|| format!("state norm {norm} rescaled to 1"));
    Ok((TwoSpinState::normalized(v)?, warning))
}

pub fn parse_product(s: &str, degrees: bool) -> Result<ProductStateAngles, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [chi, gamma, pattern] = parts.as_slice() else {
        return Err(CliError::Usage(format!(
            "--product expects chi,gamma,pattern, got {s:?}"
        )));
    };
    let chi = to_radians(parse_f64(chi, "chi")?, degrees);
    let gamma = to_radians(parse_f64(gamma, "gamma")?, degrees);
    let pattern: ProductPattern = pattern.parse().map_err(CliError::Usage)?;
    Ok(ProductStateAngles::new(chi, gamma, pattern)?)
}

pub fn parse_f64(s: &str, what: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| CliError::Usage(format!("{what}: {s:?} is not a finite number")))
}

pub fn parse_alphas(s: &str) -> Result<Vec<(String, Anisotropy)>, CliError> {
    s.split(',')
        .map(|a| {
            let a = a.trim();
            Ok((a.to_owned(), a.parse::<Anisotropy>()?))
        })
        .collect()
}

/// `lo,hi,n` with `n ≥ 2` and `lo < hi`.
pub fn parse_range(s: &str, degrees: bool) -> Result<(f64, f64, usize), CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [lo, hi, n] = parts.as_slice() else {
        return Err(CliError::Usage(format!(
            "--theta-range expects lo,hi,n, got {s:?}"
        )));
    };
    let lo = to_radians(parse_f64(lo, "lo")?, degrees);
    let hi = to_radians(parse_f64(hi, "hi")?, degrees);
    let n: usize = n
        .parse()
        .map_err(|_| CliError::Usage(format!("n: {n:?} is not a count")))?;
    if n < 2 || lo >= hi {
        return Err(CliError::BadRange { lo, hi, n });
    }
    Ok((lo, hi, n))
}

/// File-name-safe label for an anisotropy string.
pub fn alpha_label(raw: &str) -> String {
    raw.chars()
        .map(|ch| match ch {
            '/' => '_',
            '-' => 'm',
            c if c.is_ascii_alphanumeric() || c == '.' => c,
            _ => 'x',
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("-0.5j").unwrap(), Complex64::new(0.0, -0.5));
        assert_eq!(
            parse_complex("0.6-0.8j").unwrap(),
            Complex64::new(0.6, -0.8)
        );
        assert_eq!(
            parse_complex("1e-3+2.5e-1j").unwrap(),
            Complex64::new(1e-3, 0.25)
        );
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("nan").is_err());
    }

    #[test]
    fn complex_round_trip() {
        for z in [
            Complex64::new(0.1, -0.2),
            Complex64::new(-1e-20, 3.0),
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, -0.0),
        ] {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }

    #[test]
    fn state_normalization() {
        let (psi, warning) = parse_state("0,1,0,0").unwrap();
        assert_eq!(psi, TwoSpinState::up_down());
        assert!(warning.is_none());
        let (psi, warning) = parse_state("0,1.0000005,0,0").unwrap();
        assert!((psi.as_vector().norm() - 1.0).abs() < 1e-15);
        assert!(warning.is_some());
        assert!(parse_state("0,1.1,0,0").is_err());
        assert!(parse_state("0,1,0").is_err());
    }

    #[test]
    fn product_and_range() {
        let p = parse_product("90,0,-+", true).unwrap();
        assert!((p.chi - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(p.pattern, ProductPattern::MinusPlus);
        assert!(parse_product("4,0,+-", false).is_err());
        assert_eq!(parse_range("0,1,5", false).unwrap(), (0.0, 1.0, 5));
        assert!(matches!(
            parse_range("0,1,1", false),
            Err(CliError::BadRange { .. })
        ));
        assert!(matches!(
            parse_range("1,0,5", false),
            Err(CliError::BadRange { .. })
        ));
    }

    #[test]
    fn labels() {
        assert_eq!(alpha_label("1/3"), "1_3");
        assert_eq!(alpha_label("-0.5"), "m0.5");
    }
}
