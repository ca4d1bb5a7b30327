use std::collections::BTreeMap;
use std::fmt;

use super::{Circuit, GateKind};

/// Gate counts of a circuit.
///
/// `t_proxy = n_t + n_tdg + 4 * n_ccx` is the logical cost proxy; `compiled_t`
/// counts only literal `T`/`T†` gates and is meaningful after lowering.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResourceReport {
    pub n_t: usize,
    pub n_tdg: usize,
    pub n_ccx: usize,
    pub t_proxy: usize,
    pub compiled_t: usize,
    pub total_gates: usize,
    pub qubits: usize,
    pub histogram: BTreeMap<String, usize>,
}

impl ResourceReport {
    /// Number of continuous rotations still present (nonzero only before lowering).
    pub fn rotations(&self) -> usize {
        ["RZ", "RY", "MCRY", "UCRY"]
            .iter()
            .map(|t| self.histogram.get(*t).copied().unwrap_or(0))
            .sum()
    }

    pub fn count(&self, tag: &str) -> usize {
        self.histogram.get(tag).copied().unwrap_or(0)
    }

    /// Report from gate counts by tag. `MCRY` entries carry no control count
    /// here and are charged nothing; use [`count_resources`] for those.
    pub fn from_histogram(mut histogram: BTreeMap<String, usize>, qubits: usize) -> Self {
        histogram.retain(|_, v| *v > 0);
        let get = |t: &str| histogram.get(t).copied().unwrap_or(0);
        let n_t = get("T");
        let n_tdg = get("TDG");
        let n_ccx = get("CCX") + get("CSWAP") + get("AND");
        ResourceReport {
            n_t,
            n_tdg,
            n_ccx,
            t_proxy: n_t + n_tdg + 4 * n_ccx,
            compiled_t: n_t + n_tdg,
            total_gates: histogram.values().sum(),
            qubits,
            histogram,
        }
    }
}

pub fn count_resources(c: &Circuit) -> ResourceReport {
    let mut r = ResourceReport { qubits: c.num_qubits(), total_gates: c.len(), ..Default::default() };
    for g in c.gates() {
        match g.kind {
            GateKind::T => r.n_t += 1,
            GateKind::Tdg => r.n_tdg += 1,
            _ => {}
        }
        r.n_ccx += g.kind.toffoli_equivalents();
        *r.histogram.entry(g.kind.tag().to_string()).or_insert(0) += 1;
    }
    r.t_proxy = r.n_t + r.n_tdg + 4 * r.n_ccx;
    r.compiled_t = r.n_t + r.n_tdg;
    r
}

impl fmt::Display for ResourceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits       {}", self.qubits)?;
        writeln!(f, "total_gates  {}", self.total_gates)?;
        writeln!(f, "n_T          {}", self.n_t)?;
        writeln!(f, "n_Tdg        {}", self.n_tdg)?;
        writeln!(f, "n_CCX        {}", self.n_ccx)?;
        writeln!(f, "t_proxy      {}", self.t_proxy)?;
        writeln!(f, "compiled_T   {}", self.compiled_t)?;
        for (tag, n) in &self.histogram {
            writeln!(f, "  {tag:<6} {n}")?;
        }
        Ok(())
    }
}
