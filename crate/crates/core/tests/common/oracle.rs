//! Brute-force oracle for strict homogeneous systems `E x = 0`, `S x > 0`.
//!
//! Searches a box of integer points for a solution and a box of integer
//! multipliers `y_S >= 0` (not all zero), `y_E` with `S^T y_S + E^T y_E = 0`
//! for a refutation. At most one of the two can exist.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Feasible,
    Infeasible,
    Inconclusive,
}

pub struct SmallSystem {
    pub columns: usize,
    pub equalities: Vec<Vec<i64>>,
    pub stricts: Vec<Vec<i64>>,
}

fn boxed(len: usize, lo: i64, hi: i64) -> impl Iterator<Item = Vec<i64>> {
    let width = (hi - lo + 1) as u64;
    let total = width.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push(lo + (code % width) as i64);
            code /= width;
        }
        v
    })
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn solution_in_box(sys: &SmallSystem, radius: i64) -> Option<Vec<i64>> {
    boxed(sys.columns, -radius, radius).find(|x| {
        sys.equalities.iter().all(|r| dot(r, x) == 0) && sys.stricts.iter().all(|r| dot(r, x) > 0)
    })
}

pub fn refutation_in_box(sys: &SmallSystem, radius: i64) -> Option<(Vec<i64>, Vec<i64>)> {
    let (s, e) = (sys.stricts.len(), sys.equalities.len());
    for ys in boxed(s, 0, radius) {
        if ys.iter().all(|&y| y == 0) {
            continue;
        }
        for ye in boxed(e, -radius, radius) {
            let combo_is_zero = (0..sys.columns).all(|c| {
                let from_s: i64 = (0..s).map(|i| ys[i] * sys.stricts[i][c]).sum();
                let from_e: i64 = (0..e).map(|i| ye[i] * sys.equalities[i][c]).sum();
                from_s + from_e == 0
            });
            if combo_is_zero {
                return Some((ys, ye));
            }
        }
    }
    None
}

pub fn verdict(sys: &SmallSystem, radius: i64) -> Verdict {
    let sol = solution_in_box(sys, radius).is_some();
    let refu = refutation_in_box(sys, radius).is_some();
    assert!(!(sol && refu), "oracle found both a solution and a refutation");
    match (sol, refu) {
        (true, _) => Verdict::Feasible,
        (_, true) => Verdict::Infeasible,
        _ => Verdict::Inconclusive,
    }
}
