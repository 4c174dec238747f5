use crate::{Error, Result};

/// Root of a strictly increasing `f` on `[lo, hi]` with `f(lo) < 0 <= f(hi)`.
///
/// The bracket is halved until no double lies strictly between its ends,
/// then the end with the smaller residual is returned. The result is
/// rejected if the final bracket is wider than `tol`.
pub(crate) fn increasing<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (f_lo, f_hi) = (f(lo), f(hi));
    if !(f_lo < 0.0 && f_hi >= 0.0) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let (mut v_lo, mut v_hi) = (f_lo, f_hi);
    for _ in 0..2048 {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v < 0.0 {
            lo = mid;
            v_lo = v;
        } else {
            hi = mid;
            v_hi = v;
        }
    }
    if hi - lo > tol {
        return Err(Error::InvalidBracket { lo, hi });
    }
    Ok(if -v_lo < v_hi { lo } else { hi })
}

/// Root of a strictly decreasing `f`, same contract as [`increasing`].
pub(crate) fn decreasing<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    increasing(|x| -f(x), lo, hi, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_square_root() {
        let r = increasing(|x| x * x - 2.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((r - libm::sqrt(2.0)).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_bracket() {
        assert!(increasing(|x| x + 1.0, 0.0, 1.0, 1e-12).is_err());
        assert!(decreasing(|x| 1.0 - x, 0.0, 2.0, 1e-12).is_ok());
    }

    #[test]
    fn root_at_upper_end() {
        let r = increasing(|x| x - 1.0, 0.0, 1.0, 1e-12).unwrap();
        assert_eq!(r, 1.0);
    }
}
