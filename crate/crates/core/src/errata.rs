//! Sweeps the special-family grid and collects every disagreement between a
//! stated closed form and computation, with concrete counterexamples.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::deviation::{compare, Deviation, Flag};
use crate::error::Result;
use crate::forms::{automorphism_generator, automorphism_solution, predicted_cycle, predicted_reduction};
use crate::pell::{PellN, PellSolver};
use crate::special::{
    build_special, fundamental_4_special, fundamental_power_form, fundamental_special, neg1_status, neg4_status,
    predicted_cf, solutions_lucas_1, stated_neg4_second, Family, PowerVariant, Sign, SpecialD,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridBounds {
    pub abc_max: u64,
    pub exp_max: u32,
    pub i_values: Vec<u8>,
    pub signs: Vec<Sign>,
}

impl Default for GridBounds {
    fn default() -> Self {
        Self {
            abc_max: 5,
            exp_max: 3,
            i_values: vec![1, 2],
            signs: vec![Sign::Plus, Sign::Minus],
        }
    }
}

impl GridBounds {
    pub fn points(&self) -> Vec<SpecialD> {
        let mut out = Vec::new();
        let n = self.abc_max;
        let e = self.exp_max;
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    for k in 1..=e {
                        for l in 1..=e {
                            for m in 1..=e {
                                for &i in &self.i_values {
                                    for &sign in &self.signs {
                                        if let Ok(sd) = build_special(a, b, c, k, l, m, i, sign) {
                                            out.push(sd);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub params: String,
    pub d: BigUint,
    pub printed: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrataEntry {
    pub deviation: Deviation,
    /// Distinct counterexamples, ordered by `d`.
    pub instances: Vec<Instance>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrataReport {
    pub points: usize,
    pub entries: Vec<ErrataEntry>,
}

impl ErrataReport {
    pub fn entry(&self, d: Deviation) -> Option<&ErrataEntry> {
        self.entries.iter().find(|e| e.deviation == d)
    }
}

/// Every flag raised at one grid point.
pub fn point_flags(sd: &SpecialD, solver: &PellSolver) -> Result<Vec<Flag>> {
    let mut flags = fundamental_special(sd).flags;
    if let Ok(cf) = predicted_cf(sd) {
        flags.extend(cf.flags);
    }
    flags.extend(fundamental_4_special(sd, solver)?.flags);
    flags.extend(solutions_lucas_1(sd, 1).flags);
    if sd.b == 1 && sd.c == sd.a {
        let variant = match sd.family() {
            Family::D1Plus => Some(PowerVariant::D1Plus),
            Family::D2Plus => Some(PowerVariant::D2Plus),
            _ => None,
        };
        if let Some(v) = variant {
            flags.extend(fundamental_power_form(sd.a, sd.k, sd.m, v, solver)?.flags);
        }
    }
    if let Ok(r) = predicted_reduction(sd) {
        flags.extend(r.flags);
    }
    flags.extend(neg1_status(sd, solver)?.flags);
    let neg4 = neg4_status(sd, solver)?;
    flags.extend(neg4.flags);
    if let Some(first) = neg4.fundamental {
        let chain = solver.solutions_4(sd.d(), PellN::MinusFour, 2)?;
        flags.extend(compare(
            Deviation::Neg4ChainExponent,
            stated_neg4_second(&first),
            &chain[1],
        ));
    }
    for proper in [false, true] {
        if let Ok(c) = predicted_cycle(sd, proper) {
            flags.extend(c.flags);
        }
    }
    let g = automorphism_generator(sd);
    flags.extend(automorphism_solution(&g, sd.d(), 1).flags);
    Ok(flags)
}

pub fn errata_report(bounds: &GridBounds, solver: &PellSolver) -> Result<ErrataReport> {
    let points = bounds.points();
    let per_point: Vec<Vec<Flag>> = points
        .par_iter()
        .map(|sd| point_flags(sd, solver))
        .collect::<Result<_>>()?;
    let mut entries = Vec::new();
    for dev in Deviation::ALL {
        let mut instances: Vec<Instance> = points
            .iter()
            .zip(&per_point)
            .flat_map(|(sd, flags)| {
                flags.iter().filter(|f| f.deviation == dev).map(|f| Instance {
                    params: sd.params(),
                    d: sd.d().clone(),
                    printed: f.printed.clone(),
                    computed: f.computed.clone(),
                })
            })
            .collect();
        // stable: grid order breaks ties between equal d
        instances.sort_by(|x, y| x.d.cmp(&y.d));
        let mut seen = std::collections::HashSet::new();
        instances.retain(|inst| seen.insert((inst.d.clone(), inst.printed.clone(), inst.computed.clone())));
        if !instances.is_empty() {
            entries.push(ErrataEntry {
                deviation: dev,
                instances,
            });
        }
    }
    Ok(ErrataReport {
        points: points.len(),
        entries,
    })
}
