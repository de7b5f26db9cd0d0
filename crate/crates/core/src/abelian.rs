//! Isomorphism types of finitely generated abelian groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `Z^rank + Z_{d_1} + ... + Z_{d_t}` with `1 < d_1 | d_2 | ... | d_t`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    rank: usize,
    divisors: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        AbelianGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            rank,
            divisors: Vec::new(),
        }
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        AbelianGroup::from_cyclic_orders([order.into()])
    }

    /// Direct sum of cyclic groups `Z_o` (`o = 0` meaning `Z`), brought to
    /// invariant-factor form.
    pub fn from_cyclic_orders(orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut rank = 0;
        let mut torsion = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                rank += 1;
            } else if !o.is_one() {
                torsion.push(o);
            }
        }
        AbelianGroup {
            rank,
            divisors: invariant_factors(torsion),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.divisors.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.divisors.iter().product())
    }

    fn cyclic_orders(&self) -> impl Iterator<Item = BigInt> + '_ {
        std::iter::repeat_n(BigInt::zero(), self.rank).chain(self.divisors.iter().cloned())
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        AbelianGroup::from_cyclic_orders(self.cyclic_orders().chain(other.cyclic_orders()))
    }

    /// `self (x) other`, using `Z_a (x) Z_b = Z_gcd(a, b)` with `Z = Z_0`.
    pub fn tensor(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders = Vec::new();
        for a in self.cyclic_orders() {
            for b in other.cyclic_orders() {
                orders.push(a.gcd(&b));
            }
        }
        AbelianGroup::from_cyclic_orders(orders)
    }

    /// `Tor(self, other)`: only finite summand pairs contribute.
    pub fn tor(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders = Vec::new();
        for a in &self.divisors {
            for b in &other.divisors {
                orders.push(a.gcd(b));
            }
        }
        AbelianGroup::from_cyclic_orders(orders)
    }
}

impl fmt::Display for AbelianGroup {
    /// Grouped form such as `Z^2 + Z_3^4 + Z_9`; the zero group is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.divisors.len() {
            let d = &self.divisors[i];
            let run = self.divisors[i..].iter().take_while(|x| *x == d).count();
            if run == 1 {
                parts.push(format!("Z_{d}"));
            } else {
                parts.push(format!("Z_{d}^{run}"));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Turns a list of torsion orders into the divisor chain of the same group.
pub(crate) fn invariant_factors(mut orders: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..orders.len() {
        for j in i + 1..orders.len() {
            if !orders[j].is_multiple_of(&orders[i]) {
                let g = orders[i].gcd(&orders[j]);
                let l = orders[i].lcm(&orders[j]);
                orders[i] = g;
                orders[j] = l;
            }
        }
    }
    orders.retain(|o| !o.is_one());
    orders
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn canonical_form() {
        let a = AbelianGroup::from_cyclic_orders(bi(&[6, 0, 4, 1, 9]));
        assert_eq!(a.rank(), 1);
        assert_eq!(a.divisors(), &bi(&[6, 36])[..]);
        let a = AbelianGroup::from_cyclic_orders(bi(&[2, 3]));
        assert_eq!(a.divisors(), &bi(&[6])[..]);
    }

    #[test]
    fn display() {
        let a = AbelianGroup::from_cyclic_orders(bi(&[0, 0, 3, 3, 3, 3, 9]));
        assert_eq!(a.to_string(), "Z^2 + Z_3^4 + Z_9");
        assert_eq!(AbelianGroup::zero().to_string(), "0");
        assert_eq!(AbelianGroup::free(1).to_string(), "Z");
        assert_eq!(AbelianGroup::cyclic(2).to_string(), "Z_2");
    }

    #[test]
    fn tensor_and_tor() {
        let a = AbelianGroup::from_cyclic_orders(bi(&[0, 4]));
        let b = AbelianGroup::from_cyclic_orders(bi(&[0, 6]));
        // (Z + Z_4)(x)(Z + Z_6) = Z + Z_6 + Z_4 + Z_2
        assert_eq!(a.tensor(&b), AbelianGroup::from_cyclic_orders(bi(&[0, 6, 4, 2])));
        assert_eq!(a.tor(&b), AbelianGroup::cyclic(2));
        assert_eq!(a.order(), None);
        assert_eq!(AbelianGroup::cyclic(6).order(), Some(BigInt::from(6)));
    }
}
