//! Exact replays of the counting identities, inequalities and discharging rules on concrete drawings.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::cells::{census, Census, CellError, CellType};
use crate::geometry::{format_rational, int, rat, Rational};
use crate::map::{Drawing, NodeId};
use crate::properties::{is_celltype_free, is_non_homotopic, is_quasiplanar, is_simple_drawing, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("drawing image is disconnected")]
    DisconnectedDrawing,
    #[error("drawing has no edges")]
    NoEdges,
    #[error("precondition `{requirement}` violated: {witness}")]
    Precondition { requirement: String, witness: String },
}

impl From<CellError> for VerifyError {
    fn from(e: CellError) -> Self {
        match e {
            CellError::DisconnectedDrawing(_) => VerifyError::DisconnectedDrawing,
            other => VerifyError::Precondition { requirement: "cell type".into(), witness: other.to_string() },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        })
    }
}

/// One exact comparison inside a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub label: String,
    pub lhs: Rational,
    pub relation: Relation,
    pub rhs: Rational,
    pub pass: bool,
    pub witness: Option<String>,
}

impl CheckLine {
    pub fn new(label: impl Into<String>, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        let pass = match relation {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
        };
        CheckLine { label: label.into(), lhs, relation, rhs, pass, witness: None }
    }

    fn with_witness(mut self, w: impl FnOnce() -> String) -> Self {
        if !self.pass {
            self.witness = Some(w());
        }
        self
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {} [{}]",
            self.label,
            format_rational(&self.lhs),
            self.relation,
            format_rational(&self.rhs),
            if self.pass { "pass" } else { "FAIL" }
        )?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifierReport {
    pub claim: String,
    pub checks: Vec<CheckLine>,
}

impl VerifierReport {
    fn new(claim: &str, checks: Vec<CheckLine>) -> Self {
        VerifierReport { claim: claim.to_string(), checks }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for VerifierReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.claim, if self.pass() { "pass" } else { "FAIL" })?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

fn ty(word: &str) -> CellType {
    CellType::from_word(word).expect("static word")
}

fn connected_census(d: &Drawing) -> Result<Census, VerifyError> {
    if d.edge_count() == 0 {
        return Err(VerifyError::NoEdges);
    }
    Ok(census(d)?)
}

fn require(name: &str, check: Result<(), Witness>, d: &Drawing) -> Result<(), VerifyError> {
    check.map_err(|w| VerifyError::Precondition { requirement: name.to_string(), witness: w.describe(d) })
}

fn require_n3(d: &Drawing) -> Result<(), VerifyError> {
    if d.vertex_count() < 3 {
        return Err(VerifyError::Precondition {
            requirement: "n >= 3".into(),
            witness: format!("n = {}", d.vertex_count()),
        });
    }
    Ok(())
}

fn nonhomotopic_census(d: &Drawing) -> Result<Census, VerifyError> {
    let c = connected_census(d)?;
    require_n3(d)?;
    require("non-homotopic", is_non_homotopic(d), d)?;
    Ok(c)
}

fn cell_witness(d: &Drawing, c: &Census, i: usize) -> String {
    let cell = &c.cells[i];
    let nodes: Vec<_> = cell.nodes(d).map(|n| d.map().node(n).label.clone()).collect();
    format!("cell {} of type {} at {}", i, cell.cell_type, nodes.join(" "))
}

/// Sum over cells of (size - 4) against 4(n - 2).
pub fn verify_vertex_cell_identity(d: &Drawing) -> Result<VerifierReport, VerifyError> {
    let c = connected_census(d)?;
    let lhs: i64 = c.cells.iter().map(|x| x.size as i64 - 4).sum();
    let rhs = 4 * (d.vertex_count() as i64 - 2);
    Ok(VerifierReport::new(
        "vertex-cells",
        vec![CheckLine::new("sum(size - 4) = 4(n - 2)", int(lhs), Relation::Eq, int(rhs))],
    ))
}

/// `3 XXX + VXX` against the inner segments of cells of size at least 5.
pub fn corridor_sides(c: &Census) -> (i64, i64) {
    let lhs = 3 * c.count_type(&ty("XXX")) as i64 + c.count_type(&ty("VXX")) as i64;
    let rhs = c.at_least(5).map(|i| c.cells[i].e_in as i64).sum();
    (lhs, rhs)
}

pub fn verify_corridor_inequality(d: &Drawing) -> Result<VerifierReport, VerifyError> {
    let c = nonhomotopic_census(d)?;
    let (lhs, rhs) = corridor_sides(&c);
    Ok(VerifierReport::new(
        "corridor",
        vec![CheckLine::new("3 XXX + VXX <= sum_{size>=5} e_in", int(lhs), Relation::Le, int(rhs))],
    ))
}

pub fn verify_small_cell_classification(d: &Drawing) -> Result<VerifierReport, VerifyError> {
    let c = nonhomotopic_census(d)?;
    let allowed: [(usize, Vec<CellType>); 5] = [
        (1, vec![]),
        (2, vec![]),
        (3, vec![ty("XXX")]),
        (4, vec![ty("XXXX"), ty("VXX")]),
        (5, vec![ty("XXXXX"), ty("VXXX"), ty("VVX")]),
    ];
    let mut checks = Vec::new();
    for (size, types) in allowed {
        let bad: Vec<usize> =
            c.of_size(size).iter().copied().filter(|&i| !types.contains(&c.cells[i].cell_type)).collect();
        let label = if types.is_empty() {
            format!("cells of size {size}")
        } else {
            let names: Vec<_> = types.iter().map(|t| t.word().to_string()).collect();
            format!("size-{size} cells outside {{{}}}", names.join(", "))
        };
        checks.push(
            CheckLine::new(label, int(bad.len() as i64), Relation::Eq, Rational::zero())
                .with_witness(|| cell_witness(d, &c, bad[0])),
        );
    }
    Ok(VerifierReport::new("small-cells", checks))
}

/// `3 e(c) + 2 v(c) - 12`.
pub fn q_value(e: usize, v: usize) -> i64 {
    3 * e as i64 + 2 * v as i64 - 12
}

pub fn verify_fivezero_chain(d: &Drawing) -> Result<VerifierReport, VerifyError> {
    let c = nonhomotopic_census(d)?;
    let xxxxx = ty("XXXXX");
    if let Some(cell) = c.first_of_type(&xxxxx) {
        let w = Witness::Cell { cell_type: xxxxx, walk: cell.walk.clone() };
        return Err(VerifyError::Precondition { requirement: "XXXXX-free".into(), witness: w.describe(d) });
    }
    let fixed = [("XXX", -3), ("VXX", -1), ("XXXX", 0), ("VXXX", 2), ("VVX", 1)];
    let mut bad = Vec::new();
    for (i, cell) in c.cells.iter().enumerate() {
        let q = q_value(cell.e, cell.v);
        let ok = match fixed.iter().find(|(w, _)| cell.cell_type.word() == *w) {
            Some((w, val)) => {
                q == *val
                    && match *w {
                        "VXXX" => cell.e_in == 2,
                        "VVX" => cell.e_in == 0,
                        _ => true,
                    }
            }
            None => q >= cell.e_in as i64,
        };
        if !ok {
            bad.push(i);
        }
    }
    let sum_q: i64 = c.cells.iter().map(|x| q_value(x.e, x.v)).sum();
    let (cl, cr) = corridor_sides(&c);
    let middle = cr - cl;
    let n = d.vertex_count() as i64;
    let e2 = 2 * d.edge_count() as i64;
    let checks = vec![
        CheckLine::new("per-cell q values off", int(bad.len() as i64), Relation::Eq, Rational::zero())
            .with_witness(|| cell_witness(d, &c, bad[0])),
        CheckLine::new("sum q >= -3 XXX - VXX + sum_{size>=5} e_in", int(sum_q), Relation::Ge, int(middle)),
        CheckLine::new("-3 XXX - VXX + sum_{size>=5} e_in >= 0", int(middle), Relation::Ge, Rational::zero()),
        CheckLine::new("2|E| <= 12(n - 2)", int(e2), Relation::Le, int(12 * (n - 2))),
    ];
    Ok(VerifierReport::new("fivezero-chain", checks))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DischargeMode {
    NonHomotopic,
    Simple,
}

impl DischargeMode {
    pub fn threshold(self) -> Rational {
        match self {
            DischargeMode::NonHomotopic => rat(4, 5),
            DischargeMode::Simple => rat(6, 5),
        }
    }

    /// Coefficient `a` in the edge bound `|E| <= a n - 20`.
    fn slope(self) -> i64 {
        match self {
            DischargeMode::NonHomotopic => 8,
            DischargeMode::Simple => 7,
        }
    }
}

/// Exact charges: `ch1` and `ch2` per cell, `ch3` per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub ch1: Vec<Rational>,
    pub ch2: Vec<Rational>,
    pub ch3: Vec<(NodeId, Rational)>,
}

impl ChargeLedger {
    pub fn compute(d: &Drawing, c: &Census) -> Self {
        let vxx = ty("VXX");
        let fifth = rat(1, 5);
        let ch1: Vec<Rational> = c.cells.iter().map(|x| int(x.size as i64 - 4)).collect();
        let ch2: Vec<Rational> = c
            .cells
            .iter()
            .zip(&ch1)
            .map(|(x, c1)| {
                if x.cell_type == vxx {
                    c1 + &fifth
                } else if x.size >= 5 {
                    c1 - &fifth * int(x.e_in as i64)
                } else {
                    c1.clone()
                }
            })
            .collect();
        let mut acc = vec![Rational::zero(); d.map().node_count()];
        for (x, c2) in c.cells.iter().zip(&ch2) {
            if x.v == 0 {
                continue;
            }
            let v = int(x.v as i64);
            let share = (c2 - &v * &fifth) / &v;
            for n in x.vertex_corners(d) {
                acc[n.0] += &share;
            }
        }
        let ch3 = d.vertices().map(|n| (n, acc[n.0].clone())).collect();
        ChargeLedger { ch1, ch2, ch3 }
    }

    /// Charge left in cells without vertex corners, which have nobody to pass it to.
    pub fn retained(&self, c: &Census) -> Rational {
        c.cells.iter().zip(&self.ch2).filter(|(x, _)| x.v == 0).fold(Rational::zero(), |a, (_, b)| a + b)
    }

    pub fn min_ch3(&self) -> Option<&(NodeId, Rational)> {
        self.ch3.iter().min_by(|a, b| a.1.cmp(&b.1))
    }
}

pub fn run_discharging(d: &Drawing, mode: DischargeMode) -> Result<(ChargeLedger, VerifierReport), VerifyError> {
    let c = connected_census(d)?;
    require_n3(d)?;
    require("XXX-free", is_celltype_free(d, &ty("XXX"))?, d)?;
    match mode {
        DischargeMode::NonHomotopic => require("non-homotopic", is_non_homotopic(d), d)?,
        DischargeMode::Simple => require("simple drawing", is_simple_drawing(d), d)?,
    }
    let ledger = ChargeLedger::compute(d, &c);
    let n = d.vertex_count() as i64;
    let sum = |v: &[Rational]| v.iter().fold(Rational::zero(), |a, b| a + b);
    let s1 = sum(&ledger.ch1);
    let s2 = sum(&ledger.ch2);
    let s3 = ledger.ch3.iter().fold(Rational::zero(), |a, (_, b)| a + b);
    let sv = rat(c.cells.iter().map(|x| x.v as i64).sum(), 5);
    let kept = ledger.retained(&c);

    let low: Vec<usize> = (0..c.cells.len()).filter(|&i| ledger.ch2[i] < rat(c.cells[i].v as i64, 5)).collect();
    let (min_node, min) = ledger.min_ch3().cloned().unwrap_or((NodeId(0), Rational::zero()));
    let m = d.edge_count() as i64;
    let checks = vec![
        CheckLine::new("sum ch1 = 4(n - 2)", s1.clone(), Relation::Eq, int(4 * (n - 2))),
        CheckLine::new("sum ch2 <= sum ch1", s2.clone(), Relation::Le, s1),
        CheckLine::new("cells with ch2 < v/5", int(low.len() as i64), Relation::Eq, Rational::zero())
            .with_witness(|| cell_witness(d, &c, low[0])),
        CheckLine::new("min ch3", min.clone(), Relation::Ge, mode.threshold())
            .with_witness(|| format!("vertex {}", d.map().node(min_node).label)),
        CheckLine::new(
            "2|E|/5 + n min ch3 <= 4n - 8",
            rat(2 * m, 5) + int(n) * &min,
            Relation::Le,
            int(4 * n - 8),
        ),
        CheckLine::new(format!("|E| <= {}n - 20", mode.slope()), int(m), Relation::Le, int(mode.slope() * n - 20)),
        CheckLine::new("sum ch3 + sum v/5 + retained = sum ch2", s3 + sv + kept, Relation::Eq, s2),
    ];
    let claim = match mode {
        DischargeMode::NonHomotopic => "discharging-nh",
        DischargeMode::Simple => "discharging-simple",
    };
    Ok((ledger, VerifierReport::new(claim, checks)))
}

/// One applicable bound row: `|E|` against a closed-form bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub label: String,
    pub formula: String,
    pub edges: usize,
    pub bound: Option<Rational>,
    pub holds: bool,
    pub tight: bool,
}

impl fmt::Display for BoundRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.bound {
            Some(b) => write!(
                f,
                "{}: {} <= {} = {}{}{}",
                self.label,
                self.edges,
                self.formula,
                format_rational(b),
                if self.tight { " (tight)" } else { "" },
                if self.holds { "" } else { " VIOLATED" }
            ),
            None => write!(f, "{}: {} edges; {}", self.label, self.edges, self.formula),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub n: usize,
    pub edges: usize,
    pub crossings: usize,
    pub connected: bool,
    pub simple_drawing: bool,
    pub non_homotopic: bool,
    pub simple_graph: bool,
    pub quasiplanar: bool,
    /// Small cell types absent from the drawing (empty when the census is undefined).
    pub free_of: Vec<CellType>,
    pub rows: Vec<BoundRow>,
}

impl DensityReport {
    pub fn violations(&self) -> impl Iterator<Item = &BoundRow> {
        self.rows.iter().filter(|r| !r.holds)
    }
}

/// Canonical types of every cell of size at most 5.
pub fn small_types() -> Vec<CellType> {
    ["X", "XX", "V", "XXX", "VX", "XXXX", "VXX", "VV", "XXXXX", "VXXX", "VVX"].iter().map(|w| ty(w)).collect()
}

pub fn density_report(d: &Drawing) -> DensityReport {
    let n = d.vertex_count();
    let m = d.edge_count();
    let simple_drawing = is_simple_drawing(d).is_ok();
    let non_homotopic = is_non_homotopic(d).is_ok();
    let quasiplanar = is_quasiplanar(d).is_ok();
    let simple_graph = {
        let mut pairs: Vec<_> =
            d.edges().iter().map(|e| if e.tail < e.head { (e.tail, e.head) } else { (e.head, e.tail) }).collect();
        pairs.sort();
        pairs.windows(2).all(|w| w[0] != w[1])
    };
    let free_of: Vec<CellType> = match census(d) {
        Ok(c) => small_types().into_iter().filter(|t| c.count_type(t) == 0).collect(),
        Err(_) => Vec::new(),
    };
    let free = |w: &str| free_of.contains(&ty(w));
    let ni = n as i64;
    let mut rows = Vec::new();
    let mut push = |label: &str, formula: &str, bound: Rational| {
        let e = int(m as i64);
        rows.push(BoundRow {
            label: label.into(),
            formula: formula.into(),
            edges: m,
            holds: e <= bound,
            tight: e == bound,
            bound: Some(bound),
        });
    };
    if n >= 3 {
        if simple_graph {
            push("simple graph", "n(n - 1)/2", int(ni * (ni - 1) / 2));
        }
        if non_homotopic && free("XXXXX") {
            push("5_0-free non-homotopic", "6n - 12", int(6 * ni - 12));
        }
        if non_homotopic && free("XXX") {
            push("3_0-free non-homotopic", "8n - 20", int(8 * ni - 20));
        }
        if simple_drawing && free("XXX") {
            push("3_0-free simple drawing", "7n - 20", int(7 * ni - 20));
        }
        if non_homotopic && quasiplanar {
            push("quasiplanar non-homotopic", "8n - 20", int(8 * ni - 20));
        }
        if simple_drawing && quasiplanar {
            push("quasiplanar simple drawing", "6.5n - 20", rat(13 * ni - 40, 2));
        }
    }
    if simple_drawing && free("VXX") {
        rows.push(BoundRow {
            label: "4_1-free simple drawing".into(),
            formula: "no linear bound applies; quadratic regime".into(),
            edges: m,
            bound: None,
            holds: true,
            tight: false,
        });
    }
    DensityReport {
        n,
        edges: m,
        crossings: d.crossing_count(),
        connected: d.is_connected(),
        simple_drawing,
        non_homotopic,
        simple_graph,
        quasiplanar,
        free_of,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{GeoBuilder, Point};

    fn straight(points: &[(i64, i64)], edges: &[(usize, usize)]) -> Drawing {
        let mut g = GeoBuilder::new();
        for (i, &(x, y)) in points.iter().enumerate() {
            g.vertex(format!("v{i}"), Point::from_ints(x, y));
        }
        for &(a, b) in edges {
            g.edge(a, b, vec![]);
        }
        g.finish().planarize().unwrap()
    }

    fn triangle() -> Drawing {
        straight(&[(0, 0), (4, 0), (0, 3)], &[(0, 1), (1, 2), (2, 0)])
    }

    #[test]
    fn triangle_reports() {
        let d = triangle();
        let r = verify_vertex_cell_identity(&d).unwrap();
        assert!(r.pass());
        assert_eq!(r.checks[0].lhs, int(4));
        let r = verify_corridor_inequality(&d).unwrap();
        assert_eq!((r.checks[0].lhs.clone(), r.checks[0].rhs.clone()), (int(0), int(0)));
        assert!(verify_small_cell_classification(&d).unwrap().pass());
        assert!(verify_fivezero_chain(&d).unwrap().pass());
    }

    #[test]
    fn x_tree_identity() {
        let d = straight(&[(0, 0), (2, 2), (0, 2), (2, 0)], &[(0, 1), (2, 3)]);
        let r = verify_vertex_cell_identity(&d).unwrap();
        assert_eq!(r.checks[0].lhs, int(8));
        assert!(r.pass());
    }

    #[test]
    fn triangle_discharging() {
        let d = triangle();
        let (ledger, report) = run_discharging(&d, DischargeMode::NonHomotopic).unwrap();
        assert!(report.pass(), "{report}");
        // Each VVV cell keeps 2 - 3/5 and splits it over 3 corners; every vertex lies on both cells.
        assert!(ledger.ch3.iter().all(|(_, c)| *c == rat(14, 15)));
        let (_, report) = run_discharging(&d, DischargeMode::Simple).unwrap();
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).map(|c| c.label.as_str()).collect();
        assert_eq!(failed, vec!["min ch3", "|E| <= 7n - 20"]);
        assert!(report.checks[3].witness.is_some());
    }

    #[test]
    fn density_rows_for_triangle() {
        let r = density_report(&triangle());
        assert!(r.simple_drawing && r.non_homotopic && r.simple_graph);
        // Three edges on three vertices exceed the 7n - 20 and 6.5n - 20 rows.
        let violated: Vec<_> = r.violations().map(|x| x.label.as_str()).collect();
        assert_eq!(violated, vec!["3_0-free simple drawing", "quasiplanar simple drawing"]);
        let row = r.rows.iter().find(|x| x.label == "5_0-free non-homotopic").unwrap();
        assert_eq!(row.bound, Some(int(6)));
    }

    #[test]
    fn disconnected_rejected() {
        let d = straight(&[(0, 0), (1, 0), (0, 5), (1, 5)], &[(0, 1), (2, 3)]);
        assert_eq!(verify_vertex_cell_identity(&d), Err(VerifyError::DisconnectedDrawing));
    }
}
