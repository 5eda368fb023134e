//! `eval <target>`: one library function, one printed value.

use num_complex::Complex64;
use qkernel::integrate::{jackson_q_integral, weight_omega_ab, weight_omega_beta};
use qkernel::poly::{h_norm, Family, Method, Point, PolynomialEval};
use qkernel::series::{phi_series, w_series, HypergeometricSpec};
use qkernel::verify::{format_complex, format_real};
use qkernel::{qpoch, qpoch_infinite, PochhammerIndex, QContext};

use crate::args::NamedArgs;
use crate::error::CliError;

pub const TARGETS: [&str; 12] = ["qpoch", "phi", "wseries", "C", "Cg", "Phi", "H", "T", "h", "omega_b", "omega_ab", "jackson"];

/// Shortest decimal digits that round-trip; the imaginary part is omitted
/// when it is zero.
pub fn format_value(z: Complex64) -> String {
    if z.im == 0.0 {
        format_real(z.re)
    } else {
        format_complex(z)
    }
}

fn context(args: &mut NamedArgs) -> Result<QContext, CliError> {
    Ok(QContext::new(args.complex("q")?)?)
}

fn method(args: &mut NamedArgs) -> Result<Method, CliError> {
    Ok(args.parsed_opt::<Method>("method")?.unwrap_or(Method::Explicit))
}

/// `--theta` or `--x`, exactly one of them.
fn point(args: &mut NamedArgs) -> Result<Point, CliError> {
    match (args.parsed_opt::<f64>("theta")?, args.parsed_opt::<f64>("x")?) {
        (Some(t), None) => Ok(Point::Angle(t)),
        (None, Some(x)) => Ok(Point::Cos(x)),
        _ => Err(CliError::usage("give exactly one of --theta and --x")),
    }
}

fn polynomial(family: Family, args: &mut NamedArgs) -> Result<Complex64, CliError> {
    let degree = args.parsed::<usize>("n")?;
    let (alpha, beta, point) = match family {
        Family::Ultraspherical => (None, Some(args.complex("beta")?), point(args)?),
        Family::Gasper => (Some(args.complex("alpha")?), Some(args.complex("beta")?), Point::Angle(args.parsed("theta")?)),
        Family::Phi => (
            Some(args.complex("alpha")?),
            Some(args.complex("beta")?),
            Point::Pair(args.complex("x")?, args.complex("y")?),
        ),
        Family::QHermite | Family::Chebyshev => (None, None, point(args)?),
    };
    let method = method(args)?;
    // T_n does not depend on q; any admissible base will do.
    let ctx = match family {
        Family::Chebyshev => QContext::new(0.0)?,
        _ => context(args)?,
    };
    let request = PolynomialEval { family, degree, alpha, beta, point, method };
    Ok(request.evaluate(&ctx)?)
}

pub fn evaluate(target: &str, args: &mut NamedArgs) -> Result<Complex64, CliError> {
    match target {
        "qpoch" => {
            let a = args.complex("a")?;
            let n = args.parsed::<PochhammerIndex>("n")?;
            let q = args.complex("q")?;
            match n {
                PochhammerIndex::Finite(n) => Ok(qpoch(a, q, n)?),
                PochhammerIndex::Infinity => Ok(qpoch_infinite(a, &QContext::new(q)?)?),
            }
        }
        "phi" => {
            let spec = HypergeometricSpec::new(args.complex_list("upper")?, args.complex_list("lower")?, args.complex("z")?)?;
            Ok(phi_series(&spec, &context(args)?)?)
        }
        "wseries" => {
            let a1 = args.complex("a1")?;
            let rest = args.complex_list("rest")?;
            let z = args.complex("z")?;
            Ok(w_series(a1, &rest, z, &context(args)?)?)
        }
        "C" => polynomial(Family::Ultraspherical, args),
        "Cg" => polynomial(Family::Gasper, args),
        "Phi" => polynomial(Family::Phi, args),
        "H" => polynomial(Family::QHermite, args),
        "T" => polynomial(Family::Chebyshev, args),
        "h" => {
            let n = args.parsed::<usize>("n")?;
            let beta = args.complex("beta")?;
            Ok(h_norm(n, beta, &context(args)?)?)
        }
        "omega_b" => {
            let theta = args.parsed::<f64>("theta")?;
            let beta = args.complex("beta")?;
            Ok(weight_omega_beta(theta, beta, &context(args)?)?)
        }
        "omega_ab" => {
            let theta = args.parsed::<f64>("theta")?;
            let alpha = args.complex("alpha")?;
            let beta = args.complex("beta")?;
            Ok(weight_omega_ab(theta, alpha, beta, &context(args)?)?)
        }
        "jackson" => {
            // Integrand: the polynomial with coefficients --coeffs "c0;c1;...".
            let coeffs = args.complex_list("coeffs")?;
            let a = args.complex("a")?;
            let b = args.complex("b")?;
            let ctx = context(args)?;
            let f = |z: Complex64| Ok(coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c));
            Ok(jackson_q_integral(f, a, b, &ctx)?)
        }
        other => Err(CliError::usage(format!("unknown eval target {other:?}; expected one of {}", TARGETS.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(target: &str, args: &[&str]) -> Result<Complex64, CliError> {
        let raw: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let mut named = NamedArgs::parse(&raw)?;
        let v = evaluate(target, &mut named)?;
        named.finish()?;
        Ok(v)
    }

    #[test]
    fn documented_values() {
        assert_eq!(format_value(run("qpoch", &["--a", "0.5", "--q", "0.3", "--n", "2"]).unwrap()), "0.425");
        assert_eq!(format_value(run("T", &["--n", "3", "--x", "1"]).unwrap()), "1");
        let c1 = run("C", &["--n", "1", "--beta", "0.5", "--q", "0.3", "--theta", "0"]).unwrap();
        assert_eq!(format_value(c1), "1.4285714285714286");
    }

    #[test]
    fn every_target_evaluates() {
        let cases: [(&str, &[&str]); 12] = [
            ("qpoch", &["--a", "0.5", "--q", "0.3", "--n", "inf"]),
            ("phi", &["--upper", "0.5", "--lower", "", "--z", "0.3", "--q", "0.4"]),
            ("wseries", &["--a1", "0.5", "--rest", "0.9;0.8;0.7", "--z", "0.1", "--q", "0.4"]),
            ("C", &["--n", "4", "--beta", "0.5", "--q", "0.3", "--x", "0.2", "--method", "genfunc"]),
            ("Cg", &["--n", "3", "--alpha", "0.4", "--beta", "-0.3", "--theta", "0.7", "--q", "0.35"]),
            ("Phi", &["--n", "2", "--alpha", "0.3", "--beta", "0.2", "--x", "0.7,0.2", "--y", "0.7,-0.2", "--q", "0.3"]),
            ("H", &["--n", "2", "--x", "0.5", "--q", "0.3"]),
            ("T", &["--n", "2", "--theta", "0.5"]),
            ("h", &["--n", "2", "--beta", "0.5", "--q", "0.3"]),
            ("omega_b", &["--theta", "1", "--beta", "0.5", "--q", "0.3"]),
            ("omega_ab", &["--theta", "1", "--alpha", "0.5", "--beta", "0.2", "--q", "0.3"]),
            ("jackson", &["--coeffs", "0;0;1", "--a", "0", "--b", "1", "--q", "0.5"]),
        ];
        for (target, args) in cases {
            let v = run(target, args).unwrap_or_else(|e| panic!("{target}: {e}"));
            assert!(v.is_finite(), "{target}");
        }
        // int_0^1 z^2 d_q z = 1/(1 + q + q^2)
        let j = run("jackson", &["--coeffs", "0;0;1", "--a", "0", "--b", "1", "--q", "0.5"]).unwrap();
        assert!((j.re - 1.0 / 1.75).abs() < 1e-15);
    }

    #[test]
    fn error_classes() {
        assert_eq!(run("nope", &[]).unwrap_err().exit_code(), 2);
        assert_eq!(run("qpoch", &["--a", "0.5", "--q", "0.3"]).unwrap_err().exit_code(), 2);
        // (0.09; 0.3)_{-2} = 1/((1 - 0.09/0.3)(1 - 0.09/0.09)) is a pole.
        assert_eq!(run("qpoch", &["--a", "0.09", "--q", "0.3", "--n", "-2"]).unwrap_err().exit_code(), 1);
        assert_eq!(run("C", &["--n", "1", "--beta", "0.5", "--q", "1.5", "--x", "0"]).unwrap_err().exit_code(), 2);
        assert_eq!(run("C", &["--n", "1", "--beta", "0.5", "--q", "0.3", "--x", "0", "--theta", "1"]).unwrap_err().exit_code(), 2);
        assert_eq!(run("T", &["--n", "1", "--x", "0", "--extra", "1"]).unwrap_err().exit_code(), 2);
    }
}
