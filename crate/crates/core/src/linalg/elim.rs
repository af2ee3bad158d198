//! Sparse elimination driver shared by the integer and prime-field paths.
//!
//! Rows are sorted sparse `(column, coefficient)` lists. The integer path is
//! fraction-free: rows are combined by cross-multiplication and the content
//! gcd is stripped afterwards, so intermediate entries stay bounded and no
//! rational arithmetic happens before back-substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rat;

pub(crate) type IntRow = Vec<(usize, BigInt)>;

/// Sparse row over an arbitrary coefficient type.
pub(crate) type Row<C> = Vec<(usize, C)>;

/// Pivot selection strategy. All strategies are deterministic.
#[derive(Clone, Copy)]
pub(crate) enum PivotRule<'a> {
    /// Sparsest live row, then the column with fewest live entries in it
    /// (Markowitz-style), ties broken by lowest index.
    Markowitz,
    /// Leftmost live column first; yields the lex-greedy pivot set that
    /// makes reduced echelon bases canonical.
    LeftmostColumn,
    /// Follow a previously certified pivot profile `(row id, column)`,
    /// falling back to Markowitz if a hinted entry vanishes.
    Hints(&'a [(usize, usize)]),
}

pub(crate) struct Elimination<C> {
    pub ncols: usize,
    /// `(original row id, pivot column)` in elimination order.
    pub pivots: Vec<(usize, usize)>,
    /// Pivot rows after forward elimination, parallel to `pivots`.
    pub echelon: Vec<Vec<(usize, C)>>,
    /// True when rows with only an rhs entry survive (inconsistent system).
    pub inconsistent: bool,
}

impl<C> Elimination<C> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.pivots.iter().map(|&(_, c)| c).collect();
        cols.sort_unstable();
        cols
    }

    /// Columns in `0..ncols` that carry no pivot, ascending.
    pub fn free_cols(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &(_, c) in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }
}

/// Coefficient operations for one elimination flavour.
pub(crate) trait ElimOps {
    type C: Clone;
    /// Combined row `target' = target - (tval/pval) * piv` up to a nonzero
    /// scale factor, with the entry at `skip_col` guaranteed cancelled.
    fn row_eliminate(
        &self,
        target: &[(usize, Self::C)],
        tval: &Self::C,
        piv: &[(usize, Self::C)],
        pval: &Self::C,
        skip_col: usize,
    ) -> Vec<(usize, Self::C)>;
}

/// Fraction-free integer elimination with content-gcd normalization.
pub(crate) struct IntOps;

impl ElimOps for IntOps {
    type C = BigInt;

    fn row_eliminate(
        &self,
        target: &[(usize, BigInt)],
        tval: &BigInt,
        piv: &[(usize, BigInt)],
        pval: &BigInt,
        skip_col: usize,
    ) -> Vec<(usize, BigInt)> {
        let mut out = merge_rows(target, piv, skip_col, |t, p| match (t, p) {
            (Some(t), Some(p)) => pval * t - tval * p,
            (Some(t), None) => pval * t,
            (None, Some(p)) => -(tval * p),
            (None, None) => BigInt::zero(),
        });
        strip_content(&mut out);
        out
    }
}

fn strip_content(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, c) in row.iter() {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, c) in row.iter_mut() {
        *c = &*c / &g;
    }
}

/// Merge two sorted sparse rows entrywise with `combine`, dropping zeros and
/// the cancelled pivot column.
pub(crate) fn merge_rows<C: Clone + Zero>(
    a: &[(usize, C)],
    b: &[(usize, C)],
    skip_col: usize,
    combine: impl Fn(Option<&C>, Option<&C>) -> C,
) -> Vec<(usize, C)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let col = match (a.get(i), b.get(j)) {
            (Some(&(ca, _)), Some(&(cb, _))) => ca.min(cb),
            (Some(&(ca, _)), None) => ca,
            (None, Some(&(cb, _))) => cb,
            (None, None) => unreachable!(),
        };
        let av = a.get(i).filter(|&&(c, _)| c == col).map(|(_, v)| v);
        let bv = b.get(j).filter(|&&(c, _)| c == col).map(|(_, v)| v);
        if av.is_some() {
            i += 1;
        }
        if bv.is_some() {
            j += 1;
        }
        if col == skip_col {
            continue;
        }
        let v = combine(av, bv);
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Forward elimination of sparse rows (`(original id, row)` pairs).
///
/// `rhs_col`, when present, marks an augmented column that is never chosen
/// as a pivot; rows left with only that entry flag inconsistency.
pub(crate) fn eliminate<O: ElimOps>(
    rows: Vec<(usize, Row<O::C>)>,
    ncols: usize,
    rhs_col: Option<usize>,
    rule: PivotRule,
    ops: &O,
) -> Elimination<O::C> {
    let width = ncols + usize::from(rhs_col.is_some());
    let mut live: Vec<Option<(usize, Row<O::C>)>> = Vec::with_capacity(rows.len());
    let mut col_count = vec![0usize; width];
    let mut id_to_slot = std::collections::HashMap::new();
    for (id, row) in rows {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        if row.is_empty() {
            continue;
        }
        for &(c, _) in &row {
            col_count[c] += 1;
        }
        id_to_slot.insert(id, live.len());
        live.push(Some((id, row)));
    }

    let payload = |row: &[(usize, O::C)]| -> usize {
        match rhs_col {
            Some(rc) => row.iter().filter(|&&(c, _)| c != rc).count(),
            None => row.len(),
        }
    };

    let mut pivots = Vec::new();
    let mut echelon: Vec<Vec<(usize, O::C)>> = Vec::new();
    let mut hints = match rule {
        PivotRule::Hints(h) => Some(h.iter().copied()),
        _ => None,
    };

    loop {
        // Choose the pivot (slot, column).
        let mut choice: Option<(usize, usize)> = None;
        if let Some(iter) = hints.as_mut() {
            let mut keep = false;
            if let Some((id, col)) = iter.next() {
                if let Some(&slot) = id_to_slot.get(&id) {
                    if let Some((_, row)) = live[slot].as_ref() {
                        if row.binary_search_by_key(&col, |e| e.0).is_ok() {
                            choice = Some((slot, col));
                            keep = true;
                        }
                    }
                }
            }
            if !keep {
                // Profile exhausted or a hinted entry vanished; fall back.
                hints = None;
            }
        }
        if choice.is_none() {
            choice = match rule {
                PivotRule::LeftmostColumn => {
                    let mut best: Option<(usize, usize, usize)> = None; // (col, len, slot)
                    for (slot, entry) in live.iter().enumerate() {
                        if let Some((_, row)) = entry {
                            if let Some(&(c, _)) =
                                row.iter().find(|&&(c, _)| Some(c) != rhs_col)
                            {
                                let key = (c, payload(row), slot);
                                if best.is_none_or(|b| key < b) {
                                    best = Some(key);
                                }
                            }
                        }
                    }
                    best.map(|(c, _, slot)| (slot, c))
                }
                _ => {
                    // Markowitz-style: sparsest row, then sparsest column.
                    let mut best_row: Option<(usize, usize)> = None; // (len, slot)
                    for (slot, entry) in live.iter().enumerate() {
                        if let Some((_, row)) = entry {
                            let len = payload(row);
                            if len > 0 && best_row.is_none_or(|b| (len, slot) < b) {
                                best_row = Some((len, slot));
                            }
                        }
                    }
                    best_row.map(|(_, slot)| {
                        let (_, row) = live[slot].as_ref().unwrap();
                        let col = row
                            .iter()
                            .filter(|&&(c, _)| Some(c) != rhs_col)
                            .map(|&(c, _)| (col_count[c], c))
                            .min()
                            .unwrap()
                            .1;
                        (slot, col)
                    })
                }
            };
        }
        let Some((slot, col)) = choice else { break };

        let (piv_id, piv_row) = live[slot].take().unwrap();
        id_to_slot.remove(&piv_id);
        for &(c, _) in &piv_row {
            col_count[c] -= 1;
        }
        let pval = piv_row
            .iter()
            .find(|&&(c, _)| c == col)
            .map(|(_, v)| v.clone())
            .unwrap();

        for entry in live.iter_mut() {
            let Some((id, row)) = entry else { continue };
            let Ok(pos) = row.binary_search_by_key(&col, |e| e.0) else {
                continue;
            };
            let tval = row[pos].1.clone();
            for &(c, _) in row.iter() {
                col_count[c] -= 1;
            }
            let new_row = ops.row_eliminate(row, &tval, &piv_row, &pval, col);
            if new_row.is_empty() {
                id_to_slot.remove(id);
                *entry = None;
            } else {
                for &(c, _) in &new_row {
                    col_count[c] += 1;
                }
                *row = new_row;
            }
        }

        pivots.push((piv_id, col));
        echelon.push(piv_row);
    }

    let inconsistent = live.iter().any(|e| e.is_some());
    Elimination {
        ncols,
        pivots,
        echelon,
        inconsistent,
    }
}

fn rat_of(c: &BigInt) -> Rat {
    Rat::from_integer(c.clone())
}

/// Kernel vectors of the homogeneous system given by an integer echelon,
/// one sparse rational vector per free column (unit at the free column).
pub(crate) fn kernel_vectors(elim: &Elimination<BigInt>) -> Vec<Vec<(usize, Rat)>> {
    let free = elim.free_cols();
    let mut out = Vec::with_capacity(free.len());
    let mut scratch: Vec<Rat> = vec![Rat::zero(); elim.ncols];
    for &fc in &free {
        let mut touched = vec![fc];
        scratch[fc] = Rat::one();
        for (i, &(_, pc)) in elim.pivots.iter().enumerate().rev() {
            let row = &elim.echelon[i];
            let mut sum = Rat::zero();
            let mut pval = None;
            for (c, v) in row {
                if *c == pc {
                    pval = Some(v);
                } else if !scratch[*c].is_zero() {
                    sum += rat_of(v) * &scratch[*c];
                }
            }
            if !sum.is_zero() {
                scratch[pc] = -sum / rat_of(pval.expect("pivot entry present"));
                touched.push(pc);
            }
        }
        let mut vec: Vec<(usize, Rat)> = touched
            .iter()
            .filter(|&&c| !scratch[c].is_zero())
            .map(|&c| (c, scratch[c].clone()))
            .collect();
        vec.sort_unstable_by_key(|e| e.0);
        for c in touched {
            scratch[c] = Rat::zero();
        }
        out.push(vec);
    }
    out
}

/// Particular solution of the augmented system (rhs at column `ncols`),
/// free variables set to zero. `None` when inconsistent.
pub(crate) fn particular_solution(elim: &Elimination<BigInt>) -> Option<Vec<Rat>> {
    if elim.inconsistent {
        return None;
    }
    let rhs_col = elim.ncols;
    let mut x = vec![Rat::zero(); elim.ncols];
    for (i, &(_, pc)) in elim.pivots.iter().enumerate().rev() {
        let row = &elim.echelon[i];
        let mut acc = Rat::zero();
        let mut pval = None;
        for (c, v) in row {
            if *c == pc {
                pval = Some(v);
            } else if *c == rhs_col {
                acc += rat_of(v);
            } else if !x[*c].is_zero() {
                acc -= rat_of(v) * &x[*c];
            }
        }
        x[pc] = acc / rat_of(pval.expect("pivot entry present"));
    }
    Some(x)
}

/// Reduced rows `(pivot column, rational row with leading 1)` sorted by
/// pivot column, obtained by back-eliminating the integer echelon.
pub(crate) fn reduced_rows(elim: &Elimination<BigInt>) -> Vec<(usize, Vec<(usize, Rat)>)> {
    let mut rows: Vec<IntRow> = elim.echelon.clone();
    let mut order: Vec<usize> = (0..elim.pivots.len()).collect();
    order.sort_unstable_by_key(|&i| std::cmp::Reverse(elim.pivots[i].1));
    for &i in &order {
        let pc = elim.pivots[i].1;
        let piv_row = rows[i].clone();
        let pval = piv_row
            .iter()
            .find(|&&(c, _)| c == pc)
            .map(|(_, v)| v.clone())
            .unwrap();
        for (j, row) in rows.iter_mut().enumerate() {
            if j == i {
                continue;
            }
            if let Ok(pos) = row.binary_search_by_key(&pc, |e| e.0) {
                let tval = row[pos].1.clone();
                let mut new_row = merge_rows(row, &piv_row, pc, |t, p| match (t, p) {
                    (Some(t), Some(p)) => &pval * t - &tval * p,
                    (Some(t), None) => &pval * t,
                    (None, Some(p)) => -(&tval * p),
                    (None, None) => BigInt::zero(),
                });
                strip_content(&mut new_row);
                *row = new_row;
            }
        }
    }
    let mut out: Vec<(usize, Vec<(usize, Rat)>)> = rows
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let pc = elim.pivots[i].1;
            let pval = row
                .iter()
                .find(|&&(c, _)| c == pc)
                .map(|(_, v)| rat_of(v))
                .unwrap();
            let rat_row: Vec<(usize, Rat)> =
                row.iter().map(|(c, v)| (*c, rat_of(v) / &pval)).collect();
            (pc, rat_row)
        })
        .collect();
    out.sort_unstable_by_key(|e| e.0);
    out
}

/// Reduce a dense vector against an integer forward echelon, zeroing every
/// pivot coordinate. The result is the unique coset representative
/// supported on non-pivot coordinates.
pub(crate) fn reduce_dense_mod_echelon(v: &mut [Rat], elim: &Elimination<BigInt>) {
    for (i, &(_, pc)) in elim.pivots.iter().enumerate() {
        if v[pc].is_zero() {
            continue;
        }
        let row = &elim.echelon[i];
        let pval = row
            .iter()
            .find(|&&(c, _)| c == pc)
            .map(|(_, w)| rat_of(w))
            .unwrap();
        let factor = v[pc].clone() / pval;
        for (c, w) in row {
            v[*c] -= &factor * rat_of(w);
        }
        debug_assert!(v[pc].is_zero());
        v[pc] = Rat::zero();
    }
}
