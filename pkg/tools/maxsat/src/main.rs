//! MaxSAT solver for unit-weight soft clauses.
//!
//! Input: DIMACS WCNF, either the classic `p wcnf V C TOP` dialect or the
//! headerless 2022 dialect (`h` marks hard clauses).  All soft clauses must
//! have weight 1 (weights >= TOP count as hard).
//!
//! Output: MaxSAT-evaluation conventions on stdout: `o <cost>` lines,
//! `s OPTIMUM FOUND` / `s UNSATISFIABLE`, and a `v` line with signed literals.
//!
//! Algorithm: each soft clause gets a falsification indicator (reusing the
//! variable itself for unit clauses).  Solve the hard part once to get an
//! upper bound, then repeatedly re-solve with a totalizer constraint
//! "at most (best - 1) indicators true" until unsatisfiable.

use splr::{Certificate, SolverError};
use std::env;
use std::fs;
use std::process::ExitCode;

struct Instance {
    nvars: i32,
    hard: Vec<Vec<i32>>,
    soft: Vec<Vec<i32>>,
}

fn parse_wcnf(textual: &str) -> Result<Instance, String> {
    let mut nvars: i32 = 0;
    let mut top: Option<u64> = None;
    let mut hard = Vec::new();
    let mut soft = Vec::new();
    for line in textual.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() < 5 || parts[1] != "wcnf" {
                return Err(format!("bad problem line: {line}"));
            }
            nvars = parts[2].parse().map_err(|e| format!("{e}"))?;
            top = Some(parts[4].parse().map_err(|e| format!("{e}"))?);
            continue;
        }
        let mut parts = line.split_whitespace();
        let head = parts.next().unwrap();
        let mut lits: Vec<i32> = Vec::new();
        for tok in parts {
            let l: i32 = tok.parse().map_err(|e| format!("bad literal {tok}: {e}"))?;
            if l == 0 {
                break;
            }
            nvars = nvars.max(l.abs());
            lits.push(l);
        }
        if head == "h" {
            hard.push(lits);
        } else {
            let w: u64 = head.parse().map_err(|e| format!("bad weight {head}: {e}"))?;
            if top.map_or(false, |t| w >= t) {
                hard.push(lits);
            } else if w == 1 {
                soft.push(lits);
            } else {
                return Err(format!("unsupported soft weight {w} (only 1)"));
            }
        }
    }
    Ok(Instance { nvars, hard, soft })
}

enum SatResult {
    Sat(Vec<i32>),
    Unsat,
}

fn sat_solve(cnf: Vec<Vec<i32>>) -> Result<SatResult, String> {
    match Certificate::try_from(cnf) {
        Ok(Certificate::SAT(model)) => Ok(SatResult::Sat(model)),
        Ok(Certificate::UNSAT) => Ok(SatResult::Unsat),
        Err(SolverError::EmptyClause) => Ok(SatResult::Unsat),
        Err(SolverError::Inconsistent) => Ok(SatResult::Unsat),
        Err(SolverError::RootLevelConflict(_)) => Ok(SatResult::Unsat),
        Err(e) => Err(format!("solver error: {e:?}")),
    }
}

/// Totalizer outputs o_1..o_r (r = min(#lits, cap)) with the "sum >= t implies
/// o_t" direction, sufficient for enforcing upper bounds by negating o_{k+1}.
fn totalizer(lits: &[i32], cap: usize, next_var: &mut i32, clauses: &mut Vec<Vec<i32>>) -> Vec<i32> {
    if lits.len() == 1 {
        return vec![lits[0]];
    }
    let (lo, hi) = lits.split_at(lits.len() / 2);
    let a = totalizer(lo, cap, next_var, clauses);
    let b = totalizer(hi, cap, next_var, clauses);
    let r = (a.len() + b.len()).min(cap);
    let out: Vec<i32> = (0..r)
        .map(|_| {
            *next_var += 1;
            *next_var
        })
        .collect();
    for alpha in 0..=a.len() {
        for beta in 0..=b.len() {
            if alpha + beta == 0 {
                continue;
            }
            let target = (alpha + beta).min(r);
            let mut cl = Vec::with_capacity(3);
            if alpha > 0 {
                cl.push(-a[alpha - 1]);
            }
            if beta > 0 {
                cl.push(-b[beta - 1]);
            }
            cl.push(out[target - 1]);
            clauses.push(cl);
        }
    }
    out
}

fn run(path: &str) -> Result<ExitCode, String> {
    let textual = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let inst = parse_wcnf(&textual)?;
    let mut nvars = inst.nvars;
    let mut base = inst.hard.clone();

    // falsification indicators: the negated variable for unit soft clauses,
    // otherwise a fresh relaxation literal appended to the clause
    let mut inds: Vec<i32> = Vec::with_capacity(inst.soft.len());
    for cl in &inst.soft {
        if cl.len() == 1 && cl[0] < 0 {
            inds.push(-cl[0]);
        } else {
            nvars += 1;
            let r = nvars;
            let mut relaxed = cl.clone();
            relaxed.push(r);
            base.push(relaxed);
            inds.push(r);
        }
    }

    println!(
        "c minrep-maxsat: {} vars, {} hard, {} soft",
        inst.nvars,
        inst.hard.len(),
        inst.soft.len()
    );
    let mut best = match sat_solve(base.clone())? {
        SatResult::Sat(m) => m,
        SatResult::Unsat => {
            println!("s UNSATISFIABLE");
            return Ok(ExitCode::SUCCESS);
        }
    };
    let cost_of = |model: &[i32]| -> usize {
        let set: std::collections::HashSet<i32> = model.iter().copied().collect();
        inds.iter().filter(|&&l| set.contains(&l)).count()
    };
    let mut best_cost = cost_of(&best);
    println!("o {best_cost}");

    // binary search on the bound; SAT models tighten via their actual cost
    let mut lo = 0usize;
    while lo < best_cost {
        let k = lo + (best_cost - 1 - lo) / 2;
        let mut cnf = base.clone();
        let mut next_var = nvars;
        let out = totalizer(&inds, k + 1, &mut next_var, &mut cnf);
        if out.len() > k {
            cnf.push(vec![-out[k]]);
        }
        match sat_solve(cnf)? {
            SatResult::Sat(m) => {
                best_cost = cost_of(&m);
                best = m;
                println!("o {best_cost}");
            }
            SatResult::Unsat => lo = k + 1,
        }
    }

    println!("s OPTIMUM FOUND");
    let set: std::collections::HashSet<i32> = best.iter().copied().collect();
    let mut vline = String::from("v");
    for v in 1..=inst.nvars {
        vline.push(' ');
        if set.contains(&v) {
            vline.push_str(&v.to_string());
        } else {
            vline.push_str(&(-v).to_string());
        }
    }
    println!("{vline}");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let args: Vec<String> = env::args().collect();
    if args.len() != 2 {
        eprintln!("usage: minrep-maxsat <file.wcnf>");
        return ExitCode::from(2);
    }
    match run(&args[1]) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
