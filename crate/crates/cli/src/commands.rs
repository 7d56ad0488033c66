//! The table-producing commands.

use anyhow::{anyhow, Result};
use dqw_core::dipole::{dipole_infinite_well_approx, dipole_layers};
use dqw_core::oracle::Quadrature;
use dqw_core::{bound_states, find_levels, BoundState64, DipoleBreakdown, RawParams, WellParams64};
use rayon::prelude::*;

use crate::{fmt_num, level_label, Output, SweepArgs, Table, TransitionSpec};

/// One row per bound level.
pub fn levels(params: &WellParams64, max: Option<usize>) -> Result<Table> {
    let mut t = Table::new(["n", "parity", "E_eV", "k_per_nm"]);
    for l in find_levels(params, max)? {
        t.rows.push(vec![
            l.n.to_string(),
            l.parity.letter().to_string(),
            fmt_num(l.energy),
            fmt_num(l.k()),
        ]);
    }
    Ok(t)
}

fn pick(states: &[BoundState64], n: usize) -> Option<&BoundState64> {
    n.checked_sub(1).and_then(|i| states.get(i))
}

/// Layer breakdown for a 1-based pair, `None` if either level is unbound.
/// `d1` and `d2` are the means of the two claddings and the two wells, so
/// `total = 2 d1 + 2 d2 + d3` holds for pairs of either parity.
fn breakdown(states: &[BoundState64], spec: TransitionSpec) -> Result<Option<DipoleBreakdown<f64>>> {
    let (i, j) = spec.levels();
    let (Some(si), Some(sj)) = (pick(states, i), pick(states, j)) else { return Ok(None) };
    let l = dipole_layers(si, sj, &Quadrature::default())?;
    Ok(Some(DipoleBreakdown::new(0.5 * (l[0] + l[4]), 0.5 * (l[1] + l[3]), l[2])))
}

/// Energies and dipole breakdowns per sweep point, in sweep order.
pub fn sweep(base: RawParams<f64>, spec: &SweepArgs) -> Result<Output> {
    let points = spec.points()?;
    let mut table = Table::new([spec.param.column().to_string()]);
    for n in 1..=spec.levels {
        table.header.push(format!("E_{}", level_label(n)));
    }
    for t in &spec.transitions {
        for part in ["d1", "d2", "d3", "total"] {
            table.header.push(format!("{part}_{}", t.tag()));
        }
    }
    let computed: Vec<Result<(Vec<String>, bool)>> = points
        .par_iter()
        .map(|&value| {
            let params = spec.param.apply(base, value).validate()?;
            let states = bound_states(&params, None)?;
            let mut row = vec![fmt_num(value)];
            let mut missing = false;
            for n in 1..=spec.levels {
                match pick(&states, n) {
                    Some(s) => row.push(fmt_num(s.energy())),
                    None => {
                        missing = true;
                        row.push(String::new());
                    }
                }
            }
            for &t in &spec.transitions {
                match breakdown(&states, t)? {
                    Some(d) => row.extend([d.d1, d.d2, d.d3, d.total].map(fmt_num)),
                    None => {
                        missing = true;
                        row.extend(std::iter::repeat(String::new()).take(4));
                    }
                }
            }
            Ok((row, missing))
        })
        .collect();
    let mut warnings = Vec::new();
    for r in computed {
        let (row, missing) = r?;
        if missing && warnings.is_empty() {
            warnings.push("requested level not bound at some sweep points; those cells are empty".to_string());
        }
        table.rows.push(row);
    }
    Ok(Output { table, warnings })
}

/// `samples` uniform points over `[-pad, 2a+b+pad]` of level `level` (1-based).
pub fn wavefunction(params: &WellParams64, level: usize, samples: usize, pad: f64) -> Result<Table> {
    if samples < 2 {
        return Err(anyhow!("--samples must be at least 2 (got {samples})"));
    }
    if !(pad >= 0.0) {
        return Err(anyhow!("--pad-nm must be non-negative (got {pad})"));
    }
    let states = bound_states(params, None)?;
    let state = pick(&states, level)
        .ok_or_else(|| anyhow!("level {level} not found: {} bound level(s)", states.len()))?;
    let (x0, x1) = (-pad, params.total_width() + pad);
    let last = (samples - 1) as f64;
    let mut t = Table::new(["x_nm", "psi"]);
    for i in 0..samples {
        let x = if i + 1 == samples { x1 } else { x0 + (x1 - x0) * i as f64 / last };
        t.rows.push(vec![fmt_num(x), fmt_num(state.psi(x))]);
    }
    Ok(t)
}

/// Layer breakdown of one transition plus the infinite-well estimate.
pub fn dipole(params: &WellParams64, spec: TransitionSpec) -> Result<Table> {
    let states = bound_states(params, None)?;
    let (i, j) = spec.levels();
    let d = breakdown(&states, spec)?.ok_or_else(|| {
        anyhow!("transition {spec} needs levels {i} and {j}: {} bound level(s)", states.len())
    })?;
    let approx = spec
        .named()
        .map(|t| fmt_num(dipole_infinite_well_approx(params.a(), params.b(), t)))
        .unwrap_or_default();
    let mut t = Table::new(["b_nm", "d1", "d2", "d3", "total", "approx"]);
    t.rows.push(vec![fmt_num(params.b()), fmt_num(d.d1), fmt_num(d.d2), fmt_num(d.d3), fmt_num(d.total), approx]);
    Ok(t)
}
