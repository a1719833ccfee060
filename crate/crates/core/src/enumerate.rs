//! Full BKL factor types by complex dimension.
//!
//! A full type `ℝ^ℓ × S_1 × … × S_s × K` of complex dimension `n` satisfies
//! `2n = ℓ + 3s + dim K`, `2m = ℓ + s + r` even with `r = rank K`, `ℓ ≤ s + r`,
//! and every simple factor of `K` has rank at least 2. Its rank invariant is
//! `r_B = n − m`.

use serde::{Deserialize, Serialize};

use crate::decompose::BklDecomposition;
use crate::error::{Error, Result};
use crate::lie::SimpleType;
use crate::standard::{GroupSpec, SasakiModel, SasakiSpec, StandardSpec, TorusComplex};

/// Largest supported complex dimension.
pub const MAX_DIM: usize = 64;

/// Integer data of a factor type, before validation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FactorType {
    pub n: usize,
    pub l: usize,
    pub s: usize,
    /// Sorted multiset of simple types.
    pub groups: Vec<SimpleType>,
}

impl FactorType {
    pub fn new(n: usize, l: usize, s: usize, mut groups: Vec<SimpleType>) -> Self {
        groups.sort();
        Self { n, l, s, groups }
    }

    pub fn r(&self) -> usize {
        self.groups.iter().map(|g| g.rank()).sum()
    }

    pub fn group_dim(&self) -> usize {
        self.groups.iter().map(|g| g.dim()).sum()
    }

    /// Checks the arithmetic constraints of a full type.
    pub fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::InconsistentBookkeeping(why));
        if 2 * self.n != self.l + 3 * self.s + self.group_dim() {
            return bad(format!(
                "2n = {} but ℓ + 3s + dim K = {}",
                2 * self.n,
                self.l + 3 * self.s + self.group_dim()
            ));
        }
        let two_m = self.l + self.s + self.r();
        if !two_m.is_multiple_of(2) {
            return bad(format!("ℓ + s + r = {two_m} is odd"));
        }
        if self.l > self.s + self.r() {
            return bad(format!(
                "ℓ = {} exceeds s + r = {}",
                self.l,
                self.s + self.r()
            ));
        }
        if let Some(g) = self.groups.iter().find(|g| g.rank() < 2) {
            return bad(format!("group factor {g} has rank < 2"));
        }
        if self.n == 0 {
            return bad("empty type".into());
        }
        Ok(())
    }
}

impl From<&BklDecomposition> for FactorType {
    /// The full part of a decomposition (the Kähler part is left out).
    fn from(d: &BklDecomposition) -> Self {
        let b = &d.bookkeeping;
        FactorType::new((2 * b.n - b.kaehler_dim) / 2, b.l, b.s, d.flat_types())
    }
}

/// `r_B = n − m`, after checking the bookkeeping.
pub fn rank_rb(t: &FactorType) -> Result<usize> {
    t.validate()?;
    let m = (t.l + t.s + t.r()) / 2;
    Ok(t.n - m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationEntry {
    pub n: usize,
    pub l: usize,
    pub s: usize,
    pub groups: Vec<SimpleType>,
    pub r: usize,
    pub r_b: usize,
    pub is_bismut_flat: bool,
    /// `r_B = ⌈n/2⌉`.
    pub extremal_low: bool,
    /// `r_B = n − 1`.
    pub extremal_high: bool,
}

impl EnumerationEntry {
    pub fn factor_type(&self) -> FactorType {
        FactorType::new(self.n, self.l, self.s, self.groups.clone())
    }

    fn from_type(t: FactorType) -> Result<Self> {
        let r_b = rank_rb(&t)?;
        let r = t.r();
        Ok(Self {
            n: t.n,
            l: t.l,
            s: t.s,
            r,
            r_b,
            is_bismut_flat: t.s == 0,
            extremal_low: r_b == t.n.div_ceil(2),
            extremal_high: r_b + 1 == t.n,
            groups: t.groups,
        })
    }

    /// Display name such as `ℝ² × S₁ × S₂ × SU(3)`; `ℝ^0` and empty lists are omitted.
    pub fn display_name(&self) -> String {
        let mut parts = Vec::new();
        match self.l {
            0 => {}
            1 => parts.push("R".to_string()),
            l => parts.push(format!("R^{l}")),
        }
        for i in 1..=self.s {
            parts.push(format!("S{i}"));
        }
        for g in &self.groups {
            parts.push(g.group_name());
        }
        parts.join(" x ")
    }

    /// A standard spec realizing this entry, or `None` when some group is not in
    /// the matrix catalog. Sasaki models cycle through the three homogeneous
    /// models with distinct constants.
    pub fn witness(&self) -> Option<StandardSpec> {
        if !self.groups.iter().all(|g| g.constructible()) {
            return None;
        }
        let models = [
            SasakiModel::Su2Berger,
            SasakiModel::Heisenberg,
            SasakiModel::Sl2r,
        ];
        Some(StandardSpec {
            euclidean_rank: self.l,
            sasaki: (0..self.s)
                .map(|i| SasakiSpec {
                    model: models[i % 3],
                    c: 0.5 + 0.25 * i as f64,
                })
                .collect(),
            groups: self
                .groups
                .iter()
                .map(|g| GroupSpec {
                    family: g.family.name().to_string(),
                    param: g.param as i64,
                    scale: 1.0,
                })
                .collect(),
            torus_complex: TorusComplex::default(),
        })
    }
}

/// All multisets (as non-decreasing index sequences) of `rows` with total dimension ≤ `budget`.
fn group_multisets(rows: &[SimpleType], budget: usize) -> Vec<Vec<SimpleType>> {
    fn rec(
        rows: &[SimpleType],
        start: usize,
        budget: usize,
        current: &mut Vec<SimpleType>,
        out: &mut Vec<Vec<SimpleType>>,
    ) {
        out.push(current.clone());
        for i in start..rows.len() {
            let d = rows[i].dim();
            if d <= budget {
                current.push(rows[i]);
                rec(rows, i, budget - d, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(rows, 0, budget, &mut Vec::new(), &mut out);
    out
}

/// Sorted, deduplicated list of full BKL types of complex dimension `n`.
pub fn enumerate_full_bkl(n: usize) -> Result<Vec<EnumerationEntry>> {
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge(n));
    }
    let total = 2 * n;
    let rows: Vec<SimpleType> = SimpleType::table(total)
        .into_iter()
        .filter(|t| t.rank() >= 2)
        .collect();
    let mut types = Vec::new();
    for groups in group_multisets(&rows, total) {
        let dim_k: usize = groups.iter().map(|g| g.dim()).sum();
        let r: usize = groups.iter().map(|g| g.rank()).sum();
        let rest = total - dim_k;
        for s in 0..=rest / 3 {
            let l = rest - 3 * s;
            if l <= s + r && (l + s + r).is_multiple_of(2) && n > 0 {
                types.push(FactorType::new(n, l, s, groups.clone()));
            }
        }
    }
    types.sort();
    types.dedup();
    types.into_iter().map(EnumerationEntry::from_type).collect()
}

/// Aligned text table of entries.
pub fn format_table(entries: &[EnumerationEntry]) -> String {
    let header = ["n", "l", "s", "groups", "r", "r_B", "flat", "type"];
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| {
            let groups = if e.groups.is_empty() {
                "-".to_string()
            } else {
                e.groups
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
                    .join("+")
            };
            vec![
                e.n.to_string(),
                e.l.to_string(),
                e.s.to_string(),
                groups,
                e.r.to_string(),
                e.r_b.to_string(),
                if e.is_bismut_flat { "yes" } else { "no" }.to_string(),
                e.display_name(),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}
