//! Named verification suites, as driven by `opow verify`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::coefficients::{
    c_table_by_recurrence, compare_tables, verify_corollary1, verify_corollary2,
    verify_identity_cycle_count, verify_identity_doublefact, verify_identity_stirling1, CTable,
};
use crate::operator_power::{check_closed_forms, expansions};
use crate::report::Report;
use crate::series_oracle::random_oracle;
use crate::special_u::{verify_section4, verify_theorem2};

/// Random `(u, f)` pairs per operator power in the oracle suite.
pub const ORACLE_PAIRS_PER_K: u32 = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Corollary1,
    Corollary2,
    Identity1,
    Identity2,
    Identity3,
    Eq13,
    Theorem2,
    Section4,
    CrossCheck,
    Oracle,
}

impl Suite {
    /// Every concrete suite, in report order.
    pub const CONCRETE: [Suite; 10] = [
        Suite::Eq13,
        Suite::CrossCheck,
        Suite::Corollary1,
        Suite::Corollary2,
        Suite::Identity1,
        Suite::Identity2,
        Suite::Identity3,
        Suite::Theorem2,
        Suite::Section4,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Corollary1 => "corollary1",
            Suite::Corollary2 => "corollary2",
            Suite::Identity1 => "identity1",
            Suite::Identity2 => "identity2",
            Suite::Identity3 => "identity3",
            Suite::Eq13 => "eq13",
            Suite::Theorem2 => "theorem2",
            Suite::Section4 => "section4",
            Suite::CrossCheck => "cross-check",
            Suite::Oracle => "oracle",
        }
    }

    /// The concrete suites this name stands for.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::CONCRETE.to_vec(),
            s => alloc::vec![s],
        }
    }

    /// Runs one concrete suite. `All` runs everything sequentially and
    /// merges the results into one report.
    pub fn run(self, k_max: u32, seed: u64) -> Report {
        let table = || c_table_by_recurrence(k_max);
        let with_table = |name: &str, f: fn(&CTable, u32) -> Report| match table() {
            Ok(t) => f(&t, k_max),
            Err(e) => {
                let mut r = Report::new(name, 2, k_max);
                r.fail("table construction".into(), "C-table".into(), alloc::format!("{e}"));
                r
            }
        };
        match self {
            Suite::All => {
                let mut merged = Report::new("all", 1, k_max);
                for s in Suite::CONCRETE {
                    merged.absorb(s.run(k_max, seed));
                }
                merged
            }
            Suite::Eq13 => {
                let mut report = Report::new("eq13", 2, k_max);
                for exp in expansions(k_max).skip(1) {
                    report.absorb(check_closed_forms(&exp));
                }
                report
            }
            Suite::CrossCheck => {
                let mut report = with_table("cross-check", |t, k| {
                    compare_tables(&CTable::by_extraction(k), t, k)
                });
                for exp in expansions(k_max) {
                    report.absorb(exp.check_invariants());
                }
                report
            }
            Suite::Corollary1 => with_table("corollary1", verify_corollary1),
            Suite::Corollary2 => with_table("corollary2", verify_corollary2),
            Suite::Identity1 => with_table("identity1", verify_identity_stirling1),
            Suite::Identity2 => with_table("identity2", verify_identity_cycle_count),
            Suite::Identity3 => with_table("identity3", verify_identity_doublefact),
            Suite::Theorem2 => verify_theorem2(k_max),
            Suite::Section4 => verify_section4(k_max),
            Suite::Oracle => random_oracle(k_max, seed, ORACLE_PAIRS_PER_K),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite '{0}'")]
pub struct UnknownSuite(pub alloc::string::String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        core::iter::once(Suite::All)
            .chain(Suite::CONCRETE)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| UnknownSuite(s.into()))
    }
}
