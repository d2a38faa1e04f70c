//! Shared fixtures for the criterion benches.

use forge_core::corpus;
use forge_core::{Code, PcGroup, Subgroup};

/// A built-in group by id.
pub fn group(id: &str) -> PcGroup {
    corpus::builtin_by_id(id).expect("built-in group").group
}

/// Deterministic element triples spread over the group.
pub fn triples(g: &PcGroup, n: usize) -> Vec<(Code, Code, Code)> {
    let order = g.order();
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % order) as Code
    };
    (0..n).map(|_| (next(), next(), next())).collect()
}

/// The normal subgroup generated by the last `k` pc generators.
pub fn tail_normal(g: &PcGroup, k: usize) -> Subgroup {
    let gens: Vec<Code> = (g.n_gens() - k..g.n_gens()).map(|i| g.gen(i)).collect();
    Subgroup::normal_closure(g, &gens)
}
