//! Cross-oracle checks bundled into the library so the command-line tool can
//! run them without the test harness.

use num_bigint::BigUint;

use crate::analysis::{cycle_c_scaled, cycle_coeff_via_c, real_root_report};
use crate::bases::{is_magic_positive, is_palindromic, power_to_hstar, power_to_magic};
use crate::counting::{
    count_bipartite_dual, count_complete_minus_edge_dual, count_cycle_dual, count_graph_dual,
    count_stasheff_dual, ehrhart_from_counts, GraphShape, DEFAULT_BUDGET,
};
use crate::exactpoly::{parse_rational, Rational};
use crate::families::{cycle_dual, stasheff_aux, stasheff_dual, FamilyId, FamilyKind};
use crate::report::{bipartite_table, scan, ScanKind};

pub struct SelfCheck {
    pub name: &'static str,
    pub run: fn() -> Result<(), String>,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn qs(v: &[&str]) -> Vec<Rational> {
    v.iter()
        .map(|s| parse_rational(s).expect("literal"))
        .collect()
}

fn stasheff_magic_table() -> Result<(), String> {
    let rows: [(usize, &[&str]); 4] = [
        (2, &["1", "3/2", "1"]),
        (3, &["1", "2", "2", "1"]),
        (4, &["1", "5/2", "13/4", "5/2", "1"]),
        (5, &["1", "3", "19/4", "19/4", "3", "1"]),
    ];
    for (d, want) in rows {
        let m = power_to_magic(&stasheff_dual(d), d).map_err(|e| e.to_string())?;
        ensure(m.a == qs(want), || format!("stasheff:{d} magic {:?}", m.a))?;
    }
    Ok(())
}

fn brute_oracles() -> Result<(), String> {
    for d in 1..=4 {
        for n in 0..=3u64 {
            let c = count_stasheff_dual(d, n, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(
                Rational::from_integer(c.into()) == stasheff_dual(d).eval_int(n as i64),
                || format!("stasheff d={d} n={n}"),
            )?;
            let c = count_cycle_dual(d, n, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(
                Rational::from_integer(c.into()) == cycle_dual(d).eval_int(n as i64),
                || format!("cycle d={d} n={n}"),
            )?;
        }
    }
    Ok(())
}

fn counterexamples() -> Result<(), String> {
    let k37 =
        ehrhart_from_counts(|n| Ok(count_bipartite_dual(3, 7, n)), 9).map_err(|e| e.to_string())?;
    let m = power_to_magic(&k37, 9).map_err(|e| e.to_string())?;
    ensure(
        m.a == qs(&[
            "1", "27/5", "34/5", "-142/15", "88/5", "88/5", "-142/15", "34/5", "27/5", "1",
        ]),
        || format!("K_3,7 magic {:?}", m.a),
    )?;
    let k10 = ehrhart_from_counts(|n| Ok(count_complete_minus_edge_dual(10, n)), 9)
        .map_err(|e| e.to_string())?;
    let m = power_to_magic(&k10, 9).map_err(|e| e.to_string())?;
    ensure(
        m.a == qs(&[
            "1", "14/15", "23/15", "-19/45", "31/15", "31/15", "-19/45", "23/15", "14/15", "1",
        ]),
        || format!("K_10-e magic {:?}", m.a),
    )?;
    for p in [k37, k10] {
        let h = power_to_hstar(&p, 9).map_err(|e| e.to_string())?;
        let r = real_root_report(&h.as_poly()).map_err(|e| e.to_string())?;
        ensure(r.real_rooted, || "counterexample h* not real-rooted".into())?;
    }
    Ok(())
}

fn bipartite_grid() -> Result<(), String> {
    let rows = [
        "oooooooxxx",
        "oooooxxxx",
        "ooooxxxx",
        "oooxxxx",
        "ooxxxx",
        "oxxxx",
        "oxxx",
        "xxx",
        "xx",
        "x",
    ];
    for cell in bipartite_table(11, 11, 13).map_err(|e| e.to_string())? {
        let want = rows[cell.m - 2]
            .as_bytes()
            .get(cell.m2 - 2)
            .map(|&c| c == b'o');
        ensure(cell.magic_positive == want, || {
            format!("K_{},{}", cell.m, cell.m2)
        })?;
    }
    Ok(())
}

fn generic_vs_closed_counters() -> Result<(), String> {
    for (m, m2) in [(2, 2), (2, 3), (3, 3)] {
        let g = GraphShape::CompleteBipartite { m, m2 }.to_spec();
        for n in 0..=3 {
            let a = count_graph_dual(&g, n, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(a == count_bipartite_dual(m, m2, n), || {
                format!("K_{m},{m2} n={n}")
            })?;
        }
    }
    for v in [4, 5] {
        let g = GraphShape::CompleteMinusEdge { v }.to_spec();
        for n in 0..=3 {
            let a = count_graph_dual(&g, n, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(a == count_complete_minus_edge_dual(v, n), || {
                format!("K_{v}-e n={n}")
            })?;
        }
    }
    ensure(
        count_bipartite_dual(3, 7, 1) == BigUint::from(2967u32),
        || "K_3,7 at 1".into(),
    )?;
    ensure(
        count_complete_minus_edge_dual(10, 1) == BigUint::from(1025u32),
        || "K_10-e at 1".into(),
    )
}

fn cycle_scan() -> Result<(), String> {
    let rows = scan(ScanKind::Cycle, 150, 16, |_| {}).map_err(|e| e.to_string())?;
    ensure(
        rows.iter()
            .all(|r| r.verdict.is_positive() && r.palindromic),
        || "cycle scan found a failure".into(),
    )
}

fn subset_machinery() -> Result<(), String> {
    for d in 1..=12 {
        let m = power_to_magic(&cycle_dual(d), d).map_err(|e| e.to_string())?;
        for i in 0..=d {
            let c = cycle_coeff_via_c(d, i, 1 << 20).map_err(|e| e.to_string())?;
            ensure(c == m.a[i], || format!("d={d} i={i}"))?;
        }
    }
    ensure(cycle_c_scaled(6, &[1, 2, 4]) == (-76).into(), || {
        "-76 example".into()
    })
}

fn stasheff_induction() -> Result<(), String> {
    for d in 1..=30 {
        for p in [stasheff_dual(d), stasheff_aux(d)] {
            let m = power_to_magic(&p, d).map_err(|e| e.to_string())?;
            ensure(is_magic_positive(&m).is_positive(), || format!("d={d}"))?;
        }
    }
    Ok(())
}

fn family_reflexivity() -> Result<(), String> {
    for kind in FamilyKind::ALL {
        for d in kind.min_dim()..=12 {
            let f = FamilyId::new(kind, d).map_err(|e| e.to_string())?;
            let p = f.ehrhart();
            let m = power_to_magic(&p, d).map_err(|e| e.to_string())?;
            ensure(is_palindromic(&m), || format!("{f} magic not palindromic"))?;
            let h = power_to_hstar(&p, d).map_err(|e| e.to_string())?;
            ensure(h.h.iter().eq(h.h.iter().rev()), || {
                format!("{f} h* not palindromic")
            })?;
            let r = real_root_report(&h.as_poly()).map_err(|e| e.to_string())?;
            ensure(r.real_rooted, || format!("{f} h* not real-rooted"))?;
        }
    }
    Ok(())
}

pub fn checks() -> Vec<SelfCheck> {
    vec![
        SelfCheck {
            name: "stasheff magic table",
            run: stasheff_magic_table,
        },
        SelfCheck {
            name: "brute-force oracles",
            run: brute_oracles,
        },
        SelfCheck {
            name: "bipartite and minus-edge counterexamples",
            run: counterexamples,
        },
        SelfCheck {
            name: "bipartite grid",
            run: bipartite_grid,
        },
        SelfCheck {
            name: "generic vs closed counters",
            run: generic_vs_closed_counters,
        },
        SelfCheck {
            name: "cycle scan d <= 150",
            run: cycle_scan,
        },
        SelfCheck {
            name: "subset-sum machinery",
            run: subset_machinery,
        },
        SelfCheck {
            name: "stasheff induction",
            run: stasheff_induction,
        },
        SelfCheck {
            name: "family reflexivity and h*",
            run: family_reflexivity,
        },
    ]
}
