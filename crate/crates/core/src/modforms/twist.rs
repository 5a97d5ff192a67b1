//! Quadratic characters `chi_l = (l/.)` and twisting of coefficient sequences.

use crate::numerics::numtheory::kronecker;
use rug::Integer;

/// The Kronecker character `n -> (l/n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    pub ell: i64,
}

impl DirichletCharacter {
    pub fn new(ell: i64) -> Self {
        DirichletCharacter { ell }
    }

    pub fn trivial() -> Self {
        DirichletCharacter { ell: 1 }
    }

    pub fn value(&self, n: i64) -> i32 {
        kronecker(self.ell, n)
    }

    /// A modulus: `|l|` for discriminants, `4|l|` otherwise.
    pub fn modulus(&self) -> u64 {
        let a = self.ell.unsigned_abs();
        if self.ell.rem_euclid(4) <= 1 {
            a
        } else {
            4 * a
        }
    }

    /// `true` when `chi(-1) = 1`.
    pub fn is_even(&self) -> bool {
        self.value(-1) == 1
    }
}

/// `n`-th output `chi(n) a_n`, with `coeffs[0]` holding `a_1`.
pub fn twist_coeffs(coeffs: &[Integer], chi: &DirichletCharacter) -> Vec<Integer> {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| Integer::from(a * chi.value(i as i64 + 1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi5_values() {
        let c = DirichletCharacter::new(5);
        let v: Vec<i32> = (0..10).map(|n| c.value(n)).collect();
        assert_eq!(v, vec![0, 1, -1, -1, 1, 0, 1, -1, -1, 1]);
        assert!(c.is_even());
        assert!(!DirichletCharacter::new(-4).is_even());
        assert_eq!(DirichletCharacter::new(-4).modulus(), 4);
        assert_eq!(DirichletCharacter::new(2).modulus(), 8);
    }

    #[test]
    fn trivial_twist_is_identity() {
        let a: Vec<Integer> = (1..30).map(Integer::from).collect();
        assert_eq!(twist_coeffs(&a, &DirichletCharacter::trivial()), a);
        let t = twist_coeffs(&a, &DirichletCharacter::new(-3));
        assert!(t.iter().skip(2).step_by(3).all(|x| *x == 0));
    }
}
