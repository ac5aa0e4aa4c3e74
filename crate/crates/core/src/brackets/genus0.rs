use num_traits::Zero;

use super::{factorial, BracketError, ExponentMultiset};
use crate::Rational;

/// `<prod psi_j^{c_j}, M_{0,n}> = (n-3)! / prod c_j!` when `sum c_j = n - 3`.
pub fn eval_genus0_psi(exps: &ExponentMultiset) -> Result<Rational, BracketError> {
    let n = exps.len();
    if n < 3 {
        return Err(BracketError::TooFewGenusZeroPoints(n));
    }
    let dim = n as u64 - 3;
    if exps.sum() != dim {
        return Ok(Rational::zero());
    }
    let denom = exps
        .as_slice()
        .iter()
        .fold(num_bigint::BigInt::from(1u32), |acc, &c| {
            acc * factorial(c.into())
        });
    Ok(Rational::new(factorial(dim), denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g0(v: &[u32]) -> Rational {
        eval_genus0_psi(&ExponentMultiset::new(v.to_vec())).unwrap()
    }

    #[test]
    fn point_space() {
        assert_eq!(g0(&[0, 0, 0]), Rational::from_integer(1.into()));
    }

    #[test]
    fn small_values() {
        assert_eq!(g0(&[1, 0, 0, 0]), Rational::from_integer(1.into()));
        assert_eq!(g0(&[2, 1, 0, 0, 0, 0]), Rational::from_integer(3.into()));
        assert_eq!(g0(&[1, 1, 0, 0, 0]), Rational::from_integer(2.into()));
        assert_eq!(g0(&[1, 0, 0]), Rational::zero());
    }

    #[test]
    fn too_few_points() {
        assert_eq!(
            eval_genus0_psi(&ExponentMultiset::new(vec![0, 0])),
            Err(BracketError::TooFewGenusZeroPoints(2))
        );
    }
}
