//! Homology predicted from the Künneth split exact sequence
//! `H_n(G x H) = sum_{i+j=n} H_i(G) (x) H_j(H) + sum_{i+j=n-1} Tor(H_i(G), H_j(H))`,
//! starting from the closed forms of single cyclic factors.

use crate::abelian::AbelianGroup;
use crate::group::{CyclicFactor, GroupSpec, Order};

/// `H_i` of a single factor for `i = 0..=top`.
fn factor_profile(f: &CyclicFactor, top: usize) -> Vec<AbelianGroup> {
    (0..=top)
        .map(|i| match (f.order(), f.sign().is_twisted()) {
            (Order::Infinite, false) => {
                if i <= 1 {
                    AbelianGroup::free(1)
                } else {
                    AbelianGroup::zero()
                }
            }
            (Order::Infinite, true) => {
                if i == 0 {
                    AbelianGroup::cyclic(2)
                } else {
                    AbelianGroup::zero()
                }
            }
            (Order::Finite(q), false) => match i {
                0 => AbelianGroup::free(1),
                i if i % 2 == 1 => AbelianGroup::cyclic(q),
                _ => AbelianGroup::zero(),
            },
            (Order::Finite(_), true) => {
                if i % 2 == 0 {
                    AbelianGroup::cyclic(2)
                } else {
                    AbelianGroup::zero()
                }
            }
        })
        .collect()
}

fn combine(left: &[AbelianGroup], right: &[AbelianGroup], n: usize) -> AbelianGroup {
    let mut out = AbelianGroup::zero();
    for i in 0..=n {
        out = out.direct_sum(&left[i].tensor(&right[n - i]));
    }
    if n >= 1 {
        for i in 0..n {
            out = out.direct_sum(&left[i].tor(&right[n - 1 - i]));
        }
    }
    out
}

/// `H_0 .. H_top` of `g`, folding factors in one at a time.
pub fn predicted_profile(g: &GroupSpec, top: usize) -> Vec<AbelianGroup> {
    let mut profile: Vec<AbelianGroup> = (0..=top)
        .map(|i| if i == 0 { AbelianGroup::free(1) } else { AbelianGroup::zero() })
        .collect();
    for f in g.factors() {
        let single = factor_profile(f, top);
        profile = (0..=top).map(|n| combine(&profile, &single, n)).collect();
    }
    profile
}

pub fn predicted_homology(g: &GroupSpec, n: usize) -> AbelianGroup {
    predicted_profile(g, n).pop().expect("nonempty profile")
}

/// Isomorphism type of `H_n(left x right)` from the split exact sequence.
pub fn kunneth_predict(left: &GroupSpec, right: &GroupSpec, n: usize) -> AbelianGroup {
    combine(&predicted_profile(left, n), &predicted_profile(right, n), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group_spec;

    fn g(s: &str) -> GroupSpec {
        parse_group_spec(s).unwrap()
    }

    #[test]
    fn klein_four_degree_two() {
        // Degree 2: only H_1 (x) H_1 = Z_2. Degree 3: H_3 (x) H_0 twice plus
        // Tor(H_1, H_1).
        assert_eq!(kunneth_predict(&g("Z_2"), &g("Z_2"), 2), AbelianGroup::cyclic(2));
        assert_eq!(kunneth_predict(&g("Z_2"), &g("Z_2"), 3).to_string(), "Z_2^3");
    }

    #[test]
    fn trivial_right_factor() {
        let grp = g("Z^2 x Z_4~");
        for n in 0..6 {
            assert_eq!(kunneth_predict(&grp, &GroupSpec::trivial(), n), predicted_homology(&grp, n));
        }
    }

    #[test]
    fn torus_degree_one() {
        assert_eq!(kunneth_predict(&g("Z"), &g("Z"), 1), AbelianGroup::free(2));
        assert_eq!(predicted_homology(&g("Z^4"), 2), AbelianGroup::free(6));
    }
}
