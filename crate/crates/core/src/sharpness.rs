//! Worked examples showing that the hypotheses of the vanishing theorem are
//! sharp: for each, an explicit cycle `c` with `c ^ j(c) != 0`.

use num_bigint::BigInt;

use crate::chain::parse_chain;
use crate::criterion::ChiContext;
use crate::error::Result;
use crate::group::{parse_group_spec, GroupSpec};
use crate::homology::{ClassOrder, HomologyClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldenExample {
    pub id: &'static str,
    pub group: &'static str,
    pub degree: usize,
    pub cycle: &'static str,
    /// Expected value of `c ^ j(c)` as a chain literal of degree `2n`.
    pub expected: &'static str,
    /// `None` for a class of infinite order.
    pub expected_order: Option<u64>,
    /// Accept the negative of `expected` as well.
    pub up_to_sign: bool,
}

pub const GOLDEN_EXAMPLES: [GoldenExample; 10] = [
    GoldenExample {
        id: "ex:cond_a",
        group: "Z^4",
        degree: 2,
        cycle: "[1100]+[0011]",
        expected: "2*[1111]",
        expected_order: None,
        up_to_sign: true,
    },
    GoldenExample {
        id: "ex:cond_b",
        group: "Z^3 x Z_3",
        degree: 3,
        cycle: "[1110]+[0003]",
        expected: "2*[1113]",
        expected_order: Some(3),
        up_to_sign: false,
    },
    GoldenExample {
        id: "ex:cond_b_even",
        group: "Z^7 x Z_3",
        degree: 6,
        cycle: "[11111100]+[00000015]",
        expected: "2*[11111115]",
        expected_order: Some(3),
        up_to_sign: false,
    },
    GoldenExample {
        id: "ex:cond_c",
        group: "Z^2 x Z_3 x Z_3",
        degree: 4,
        cycle: "[1030]+[0103]",
        expected: "2*[1133]",
        expected_order: Some(3),
        up_to_sign: false,
    },
    GoldenExample {
        id: "ex:cond_c_odd",
        group: "Z^2 x Z_3 x Z_3",
        degree: 5,
        cycle: "[1130]+[0005]",
        expected: "[1135]",
        expected_order: Some(3),
        up_to_sign: false,
    },
    GoldenExample {
        id: "ex:cond_d_1",
        group: "Z x Z_3 x Z_3 x Z_3",
        degree: 7,
        cycle: "[1330]+[0007]",
        expected: "2*[1337]",
        expected_order: Some(3),
        up_to_sign: false,
    },
    GoldenExample {
        id: "ex:cond_d_1_even",
        group: "Z x Z_3 x Z_3 x Z_3",
        degree: 4,
        cycle: "[1003]+[0121]+[0112]",
        expected: "[1115]",
        expected_order: Some(3),
        up_to_sign: true,
    },
    GoldenExample {
        id: "ex:cond_d_2",
        group: "Z_3 x Z_3 x Z_3 x Z_3",
        degree: 6,
        cycle: "[3300]+[0033]",
        expected: "2*[3333]",
        expected_order: Some(3),
        up_to_sign: false,
    },
    GoldenExample {
        id: "ex:cond_d_2odd",
        group: "Z_3 x Z_3 x Z_3 x Z_3",
        degree: 5,
        cycle: "[0311]+[4100]+[3200]",
        expected: "[3511]",
        expected_order: Some(3),
        up_to_sign: false,
    },
    GoldenExample {
        id: "ex:cond_e",
        group: "Z^8 x Z_2",
        degree: 4,
        cycle: "[111100000]+[000011110]",
        expected: "2*[111111110]",
        expected_order: None,
        up_to_sign: false,
    },
];

pub fn find_example(id: &str) -> Option<&'static GoldenExample> {
    GOLDEN_EXAMPLES.iter().find(|e| e.id == id)
}

#[derive(Debug, Clone)]
pub struct ExampleOutcome {
    pub example: GoldenExample,
    pub passed: bool,
    pub chi: HomologyClass,
    pub order: ClassOrder,
    pub detail: String,
}

impl GoldenExample {
    pub fn group_spec(&self) -> GroupSpec {
        parse_group_spec(self.group).expect("static group spec")
    }

    pub fn run(&self) -> Result<ExampleOutcome> {
        let g = self.group_spec();
        let n = self.degree;
        let ctx = ChiContext::new(&g, n);
        let cycle = parse_chain(&g, n, self.cycle)?;
        let chi = ctx.chi_of_cycle(&cycle)?;
        let expected = ctx.target().reduce_cycle(&parse_chain(&g, 2 * n, self.expected)?)?;
        let order = chi.order();
        let want_order = match self.expected_order {
            Some(o) => ClassOrder::Finite(BigInt::from(o)),
            None => ClassOrder::Infinite,
        };
        let value_ok = chi == expected || (self.up_to_sign && chi == expected.neg());
        let passed = value_ok && !chi.is_zero() && order == want_order;
        let sign = if self.up_to_sign { "+-" } else { "" };
        let detail = format!(
            "H_{}({}) = {}; c ^ j(c) = {} with order {} (expected {}{} of order {})",
            2 * n,
            self.group,
            ctx.target(),
            ctx.target().representative(&chi),
            order,
            sign,
            self.expected,
            want_order
        );
        Ok(ExampleOutcome {
            example: *self,
            passed,
            chi,
            order,
            detail,
        })
    }
}
