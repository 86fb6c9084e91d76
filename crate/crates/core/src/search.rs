//! Backtracking over the acceptable coloring space.
//!
//! Every search grows a sequence in diagonal order, trying colors in
//! ascending order. A new tile only has to agree with its left and lower
//! neighbours, both of which precede it, so each node costs two mask lookups.
//!
//! With pruning on, placing a tile also looks one diagonal ahead: if the
//! tile's right or upper neighbour has no admissible color left, no sequence
//! through this node can reach that neighbour's index. Branches whose bound
//! falls short of what the caller needs are skipped; the nodes themselves are
//! still visited, so pruning never changes an answer.

use serde::{Deserialize, Serialize};

use crate::checker::{self, Check};
use crate::coloring::{ColorSequence, PeriodicWitness};
use crate::diag::Layout;
use crate::system::{bits, full_mask, Color, ColoringSystem};

/// Limits for one search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Longest sequence explored.
    pub depth_cap: usize,
    /// Largest horizontal and vertical period tried for witnesses.
    pub period_cap: usize,
    /// Placements allowed per search before giving up.
    pub node_cap: Option<u64>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { depth_cap: 64, period_cap: 4, node_cap: None }
    }
}

impl SearchBudget {
    pub fn new(depth_cap: usize, period_cap: usize) -> Self {
        assert!(depth_cap >= 1 && period_cap >= 1, "caps must be at least 1");
        SearchBudget { depth_cap, period_cap, node_cap: None }
    }

    pub fn with_node_cap(mut self, node_cap: u64) -> Self {
        assert!(node_cap >= 1);
        self.node_cap = Some(node_cap);
        self
    }
}

/// Longest acceptable sequence, as far as the budget could tell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxLength {
    /// Some sequence has this length and none is longer.
    Exact(usize),
    /// A sequence of length `depth_cap` exists.
    ReachedCap,
    /// The node cap ran out first; `longest` is the best length seen.
    Indeterminate { longest: usize },
}

/// The node cap ran out before the search finished.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("node cap of {nodes} placements exhausted")]
pub struct Indeterminate {
    pub nodes: u64,
}

/// Number of acceptable sequences of each length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthProfile {
    /// `counts[l]` sequences of length `l + 1`.
    pub counts: Vec<u64>,
}

impl LengthProfile {
    /// Longest length with a nonzero count.
    pub fn longest(&self) -> usize {
        self.counts.iter().rposition(|&c| c > 0).map_or(0, |i| i + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub sequences: Vec<ColorSequence>,
    /// More sequences exist beyond the returned ones.
    pub truncated: bool,
}

/// Outcome of a chain construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chain {
    /// The last sequence of the chain; its prefixes are the earlier links.
    Reached(ColorSequence),
    /// No acceptable sequence of the requested length exists.
    Unreachable,
    Indeterminate,
}

/// Classification of a system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "VerdictFile", try_from = "VerdictFile")]
pub enum Verdict {
    /// No acceptable coloring: every acceptable sequence has length at most
    /// `max_length`, and one reaches it.
    Bounded { max_length: usize },
    /// An acceptable coloring exists, certified by a torus.
    HasColoring(PeriodicWitness),
    /// Neither outcome could be established within the budget.
    Unknown { depth_reached: usize, period_cap_reached: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Bounded,
    HasColoring,
    Unknown,
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Bounded { .. } => VerdictKind::Bounded,
            Verdict::HasColoring(_) => VerdictKind::HasColoring,
            Verdict::Unknown { .. } => VerdictKind::Unknown,
        }
    }

    pub fn bounded_length(&self) -> Option<usize> {
        match self {
            Verdict::Bounded { max_length } => Some(*max_length),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&PeriodicWitness> {
        match self {
            Verdict::HasColoring(w) => Some(w),
            _ => None,
        }
    }

    /// The same verdict for the system relabeled by `perm`.
    pub fn relabel(&self, perm: &[Color]) -> Verdict {
        match self {
            Verdict::HasColoring(w) => Verdict::HasColoring(w.relabel(perm)),
            other => other.clone(),
        }
    }

    /// One-line human summary.
    pub fn describe(&self) -> String {
        match self {
            Verdict::Bounded { max_length } => format!("bounded, max length {max_length}"),
            Verdict::HasColoring(w) => format!("has coloring, period {}\u{d7}{}", w.p(), w.q()),
            Verdict::Unknown { depth_reached, period_cap_reached } => format!(
                "unknown, sequences reach length {depth_reached}, no witness with periods up to {period_cap_reached}"
            ),
        }
    }
}

/// Tagged JSON form of a verdict; witness cells are rows, bottom-up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case", deny_unknown_fields)]
pub enum VerdictFile {
    Bounded { max_length: usize },
    HasColoring { p: usize, q: usize, cells: Vec<Vec<Color>> },
    Unknown { depth_reached: usize, period_cap_reached: usize },
}

impl From<Verdict> for VerdictFile {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Bounded { max_length } => VerdictFile::Bounded { max_length },
            Verdict::HasColoring(w) => VerdictFile::HasColoring { p: w.p(), q: w.q(), cells: w.rows() },
            Verdict::Unknown { depth_reached, period_cap_reached } => {
                VerdictFile::Unknown { depth_reached, period_cap_reached }
            }
        }
    }
}

impl TryFrom<VerdictFile> for Verdict {
    type Error = crate::coloring::WitnessError;

    fn try_from(v: VerdictFile) -> Result<Self, Self::Error> {
        Ok(match v {
            VerdictFile::Bounded { max_length } => Verdict::Bounded { max_length },
            VerdictFile::HasColoring { p, q, cells } => {
                let w = PeriodicWitness::from_rows(&cells)?;
                if (w.p(), w.q()) != (p, q) {
                    return Err(crate::coloring::WitnessError::CellCount {
                        p,
                        q,
                        expected: p * q,
                        found: w.p() * w.q(),
                    });
                }
                Verdict::HasColoring(w)
            }
            VerdictFile::Unknown { depth_reached, period_cap_reached } => {
                Verdict::Unknown { depth_reached, period_cap_reached }
            }
        })
    }
}

/// What a visitor wants after seeing an accepted node.
enum Step {
    Descend,
    Skip,
    Stop,
}

enum Walk {
    Completed,
    Stopped,
    Aborted,
}

/// Relation masks of one system, laid out for the inner loops.
struct Rules {
    origin: Color,
    full: u64,
    h: Vec<u64>,
    v: Vec<u64>,
}

impl Rules {
    fn new(sys: &ColoringSystem) -> Self {
        let n = sys.colors();
        Rules {
            origin: sys.origin(),
            full: full_mask(n),
            h: (0..n as Color).map(|c| sys.horizontal().successors(c)).collect(),
            v: (0..n as Color).map(|c| sys.vertical().successors(c)).collect(),
        }
    }
}

/// Reusable search state. Holds the neighbour layout so a census worker can
/// run many searches without rebuilding it.
#[derive(Debug, Clone)]
pub struct Searcher {
    budget: SearchBudget,
    layout: Layout,
    prune: bool,
}

impl Searcher {
    pub fn new(budget: SearchBudget) -> Self {
        Searcher { budget, layout: Layout::new(budget.depth_cap), prune: true }
    }

    /// Disables look-ahead pruning; used to cross-check the pruned search.
    pub fn without_pruning(mut self) -> Self {
        self.prune = false;
        self
    }

    pub fn budget(&self) -> SearchBudget {
        self.budget
    }

    fn ensure_layout(&mut self, len: usize) {
        if self.layout.len() < len {
            self.layout = Layout::new(len.max(2 * self.layout.len()));
        }
    }

    fn candidates(&self, rules: &Rules, seq: &[Color]) -> u64 {
        let k = seq.len();
        if k == 0 {
            return 1 << rules.origin;
        }
        let mut mask = rules.full;
        if let Some(l) = self.layout.left(k) {
            mask &= rules.h[seq[l] as usize];
        }
        if let Some(b) = self.layout.below(k) {
            mask &= rules.v[seq[b] as usize];
        }
        mask
    }

    /// Upper bound on the length of any sequence extending `seq`, from the
    /// newest tile's right and upper neighbours.
    fn reach_bound(&self, rules: &Rules, seq: &[Color]) -> usize {
        if !self.prune {
            return usize::MAX;
        }
        let k = seq.len() - 1;
        let c = seq[k] as usize;
        let mut bound = usize::MAX;
        if rules.h[c] == 0 {
            bound = self.layout.right(k);
        }
        // the upper neighbour's left neighbour is the previous tile of this
        // diagonal, already placed
        let mut up = rules.v[c];
        if self.layout.tile(k).x > 0 {
            up &= rules.h[seq[k - 1] as usize];
        }
        if up == 0 {
            bound = bound.min(self.layout.above(k));
        }
        bound
    }

    /// Depth-first walk below `seq`, never past `horizon` colors. `seq` is
    /// restored on return unless the visitor stops the walk.
    fn walk(
        &mut self,
        rules: &Rules,
        seq: &mut Vec<Color>,
        horizon: usize,
        node_cap: Option<u64>,
        nodes: &mut u64,
        mut visit: impl FnMut(&[Color], usize) -> Step,
    ) -> Walk {
        let base = seq.len();
        if base >= horizon {
            return Walk::Completed;
        }
        self.ensure_layout(horizon);
        let mut stack = vec![self.candidates(rules, seq)];
        while let Some(&mask) = stack.last() {
            if mask == 0 {
                stack.pop();
                if stack.is_empty() {
                    break;
                }
                seq.pop();
                continue;
            }
            let top = stack.len() - 1;
            stack[top] = mask & (mask - 1);
            seq.push(mask.trailing_zeros() as Color);
            *nodes += 1;
            if node_cap.is_some_and(|cap| *nodes > cap) {
                seq.truncate(base);
                return Walk::Aborted;
            }
            let bound = self.reach_bound(rules, seq);
            match visit(seq, bound) {
                Step::Stop => return Walk::Stopped,
                Step::Descend if seq.len() < horizon => {
                    let next = self.candidates(rules, seq);
                    stack.push(next);
                }
                _ => {
                    seq.pop();
                }
            }
        }
        debug_assert_eq!(seq.len(), base);
        Walk::Completed
    }

    /// Longest acceptable sequence up to `depth_cap`.
    pub fn max_accept_length(&mut self, sys: &ColoringSystem) -> MaxLength {
        let rules = Rules::new(sys);
        let cap = self.budget.depth_cap;
        let mut best = 0;
        let mut nodes = 0;
        let mut seq = Vec::with_capacity(cap);
        let walk = self.walk(&rules, &mut seq, cap, self.budget.node_cap, &mut nodes, |s, bound| {
            best = best.max(s.len());
            if s.len() >= cap {
                Step::Stop
            } else if bound <= best {
                Step::Skip
            } else {
                Step::Descend
            }
        });
        match walk {
            Walk::Stopped => MaxLength::ReachedCap,
            Walk::Completed => MaxLength::Exact(best),
            Walk::Aborted => MaxLength::Indeterminate { longest: best },
        }
    }

    /// Counts every acceptable sequence up to `depth_cap` in one traversal.
    pub fn length_profile(&mut self, sys: &ColoringSystem) -> Result<LengthProfile, Indeterminate> {
        let rules = Rules::new(sys);
        let cap = self.budget.depth_cap;
        let mut counts = vec![0u64; cap];
        let mut nodes = 0;
        let mut seq = Vec::with_capacity(cap);
        // every node counts, so nothing may be skipped
        let walk = self.walk(&rules, &mut seq, cap, self.budget.node_cap, &mut nodes, |s, _| {
            counts[s.len() - 1] += 1;
            Step::Descend
        });
        match walk {
            Walk::Aborted => Err(Indeterminate { nodes }),
            _ => Ok(LengthProfile { counts }),
        }
    }

    /// Acceptable sequences of length exactly `len`, lexicographically, at most
    /// `limit` of them.
    pub fn enumerate(&mut self, sys: &ColoringSystem, len: usize, limit: usize) -> Enumeration {
        let rules = Rules::new(sys);
        let mut sequences = Vec::new();
        let mut truncated = false;
        let mut nodes = 0;
        let mut seq = Vec::with_capacity(len);
        self.walk(&rules, &mut seq, len, None, &mut nodes, |s, bound| {
            if s.len() == len {
                if sequences.len() < limit {
                    sequences.push(ColorSequence::from(s));
                    Step::Skip
                } else {
                    truncated = true;
                    Step::Stop
                }
            } else if bound < len {
                Step::Skip
            } else {
                Step::Descend
            }
        });
        Enumeration { sequences, truncated }
    }

    /// Looks for an acceptable sequence of length `target` extending `seq`.
    /// On success `seq` holds it.
    fn reach(&mut self, rules: &Rules, seq: &mut Vec<Color>, target: usize, node_cap: Option<u64>) -> Walk {
        if seq.len() >= target {
            return Walk::Stopped;
        }
        let mut nodes = 0;
        self.walk(rules, seq, target, node_cap, &mut nodes, |s, bound| {
            if s.len() >= target {
                Step::Stop
            } else if bound < target {
                Step::Skip
            } else {
                Step::Descend
            }
        })
    }

    /// Colors `c` such that `prefix ⊕ c` is accepted and extends to an
    /// acceptable sequence of length `horizon` (at least `|prefix| + 1`).
    /// `prefix` must itself be accepted.
    pub fn extendable_colors(
        &mut self,
        sys: &ColoringSystem,
        prefix: &ColorSequence,
        horizon: usize,
    ) -> Vec<Color> {
        let rules = Rules::new(sys);
        let target = horizon.max(prefix.len() + 1);
        let next = checker::next_colors(sys, prefix.as_slice());
        bits(next)
            .filter(|&c| {
                let mut seq = prefix.extended(c).into_inner();
                matches!(self.reach(&rules, &mut seq, target, None), Walk::Stopped)
            })
            .collect()
    }

    /// Grows `(a) ⊆ (a, a1) ⊆ …` to length `horizon`, always taking the least
    /// color that still reaches the horizon. That is the lexicographically
    /// least acceptable sequence of that length, which one ascending
    /// depth-first search finds directly.
    pub fn build_chain(&mut self, sys: &ColoringSystem, horizon: usize) -> Chain {
        if horizon == 0 {
            return Chain::Unreachable;
        }
        let rules = Rules::new(sys);
        let mut seq = Vec::with_capacity(horizon);
        match self.reach(&rules, &mut seq, horizon, self.budget.node_cap) {
            Walk::Stopped => Chain::Reached(seq.into()),
            Walk::Completed => Chain::Unreachable,
            Walk::Aborted => Chain::Indeterminate,
        }
    }

    /// Searches tori with `1 <= p, q <= period_cap`, smallest area first.
    pub fn find_periodic_witness(&self, sys: &ColoringSystem) -> WitnessSearch {
        let cap = self.budget.period_cap;
        let mut periods: Vec<(usize, usize)> =
            (1..=cap).flat_map(|p| (1..=cap).map(move |q| (p, q))).collect();
        periods.sort_by_key(|&(p, q)| (p * q, p, q));
        let torus = Torus::new(sys);
        let mut nodes = 0;
        for (p, q) in periods {
            match torus.search(p, q, self.budget.node_cap, &mut nodes) {
                Some(Ok(w)) => return WitnessSearch::Found(w),
                Some(Err(())) => return WitnessSearch::Aborted,
                None => {}
            }
        }
        WitnessSearch::NotFound
    }

    /// Witness first, then exhaustive length search.
    pub fn classify(&mut self, sys: &ColoringSystem) -> Verdict {
        if let WitnessSearch::Found(w) = self.find_periodic_witness(sys) {
            return Verdict::HasColoring(w);
        }
        let period_cap_reached = self.budget.period_cap;
        match self.max_accept_length(sys) {
            MaxLength::Exact(max_length) => Verdict::Bounded { max_length },
            MaxLength::ReachedCap => {
                Verdict::Unknown { depth_reached: self.budget.depth_cap, period_cap_reached }
            }
            MaxLength::Indeterminate { longest } => {
                Verdict::Unknown { depth_reached: longest, period_cap_reached }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSearch {
    Found(PeriodicWitness),
    NotFound,
    /// The node cap ran out before every period was tried.
    Aborted,
}

impl WitnessSearch {
    pub fn found(self) -> Option<PeriodicWitness> {
        match self {
            WitnessSearch::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Masks for torus filling, including predecessor sets for the wrap-around
/// constraints.
struct Torus {
    rules: Rules,
    h_pred: Vec<u64>,
    v_pred: Vec<u64>,
    h_loops: u64,
    v_loops: u64,
}

impl Torus {
    fn new(sys: &ColoringSystem) -> Self {
        let n = sys.colors() as Color;
        Torus {
            rules: Rules::new(sys),
            h_pred: (0..n).map(|c| sys.horizontal().predecessors(c)).collect(),
            v_pred: (0..n).map(|c| sys.vertical().predecessors(c)).collect(),
            h_loops: sys.horizontal().loops(),
            v_loops: sys.vertical().loops(),
        }
    }

    fn candidates(&self, p: usize, q: usize, cells: &[Color]) -> u64 {
        let idx = cells.len();
        let (i, j) = (idx % p, idx / p);
        let r = &self.rules;
        if idx == 0 {
            let mut m = 1u64 << r.origin;
            if p == 1 {
                m &= self.h_loops;
            }
            if q == 1 {
                m &= self.v_loops;
            }
            return m;
        }
        let mut m = r.full;
        if i > 0 {
            m &= r.h[cells[idx - 1] as usize];
        }
        if j > 0 {
            m &= r.v[cells[idx - p] as usize];
        }
        if i == p - 1 {
            m &= if p == 1 { self.h_loops } else { self.h_pred[cells[j * p] as usize] };
        }
        if j == q - 1 {
            m &= if q == 1 { self.v_loops } else { self.v_pred[cells[i] as usize] };
        }
        m
    }

    /// `None` when no `p x q` torus exists, `Some(Err)` when the node cap hit.
    fn search(
        &self,
        p: usize,
        q: usize,
        node_cap: Option<u64>,
        nodes: &mut u64,
    ) -> Option<Result<PeriodicWitness, ()>> {
        let size = p * q;
        let mut cells: Vec<Color> = Vec::with_capacity(size);
        let mut stack = vec![self.candidates(p, q, &cells)];
        while let Some(&mask) = stack.last() {
            if mask == 0 {
                stack.pop();
                cells.pop();
                continue;
            }
            let top = stack.len() - 1;
            stack[top] = mask & (mask - 1);
            cells.push(mask.trailing_zeros() as Color);
            *nodes += 1;
            if node_cap.is_some_and(|cap| *nodes > cap) {
                return Some(Err(()));
            }
            if cells.len() == size {
                return Some(Ok(PeriodicWitness::from_cells(p, q, cells)));
            }
            stack.push(self.candidates(p, q, &cells));
        }
        None
    }
}

pub fn max_accept_length(sys: &ColoringSystem, budget: SearchBudget) -> MaxLength {
    Searcher::new(budget).max_accept_length(sys)
}

pub fn length_profile(sys: &ColoringSystem, budget: SearchBudget) -> Result<LengthProfile, Indeterminate> {
    Searcher::new(budget).length_profile(sys)
}

pub fn enumerate(sys: &ColoringSystem, len: usize, limit: usize) -> Enumeration {
    Searcher::new(SearchBudget::new(len.max(1), 1)).enumerate(sys, len, limit)
}

/// See [`Searcher::extendable_colors`]. Panics if `prefix` is not accepted.
pub fn extendable_colors(sys: &ColoringSystem, prefix: &ColorSequence, horizon: usize) -> Vec<Color> {
    assert_eq!(
        checker::check_sequence(sys, prefix),
        Ok(Check::Accepted),
        "prefix must be an acceptable sequence"
    );
    Searcher::new(SearchBudget::new(horizon.max(prefix.len() + 1), 1)).extendable_colors(sys, prefix, horizon)
}

pub fn build_chain(sys: &ColoringSystem, horizon: usize, budget: SearchBudget) -> Chain {
    Searcher::new(SearchBudget { depth_cap: horizon.max(1), ..budget }).build_chain(sys, horizon)
}

pub fn find_periodic_witness(sys: &ColoringSystem, budget: SearchBudget) -> Option<PeriodicWitness> {
    Searcher::new(budget).find_periodic_witness(sys).found()
}

pub fn classify(sys: &ColoringSystem, budget: SearchBudget) -> Verdict {
    Searcher::new(budget).classify(sys)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: usize, a: Color, h: &[(Color, Color)], v: &[(Color, Color)]) -> ColoringSystem {
        ColoringSystem::new(n, a, h.iter().copied(), v.iter().copied()).unwrap()
    }

    fn seqs(v: &[&[Color]]) -> Vec<ColorSequence> {
        v.iter().map(|s| ColorSequence::from(*s)).collect()
    }

    #[test]
    fn max_length_examples() {
        let b = SearchBudget::new(10, 2);
        assert_eq!(max_accept_length(&sys(1, 0, &[], &[]), b), MaxLength::Exact(1));
        assert_eq!(max_accept_length(&sys(1, 0, &[], &[(0, 0)]), b), MaxLength::Exact(2));
        assert_eq!(max_accept_length(&sys(1, 0, &[(0, 0)], &[(0, 0)]), b), MaxLength::ReachedCap);
        // cap equal to the true maximum cannot certify it
        let tight = SearchBudget::new(2, 2);
        assert_eq!(max_accept_length(&sys(1, 0, &[], &[(0, 0)]), tight), MaxLength::ReachedCap);
    }

    #[test]
    fn node_cap_is_reported() {
        let s = sys(2, 0, &[(0, 0), (0, 1), (1, 0), (1, 1)], &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        let b = SearchBudget::new(64, 1).with_node_cap(5);
        let mut searcher = Searcher::new(b);
        // five placements along 0,0,0,0,0 then the sixth trips the cap
        assert_eq!(searcher.max_accept_length(&s), MaxLength::Indeterminate { longest: 5 });
        assert!(searcher.length_profile(&s).is_err());
        assert_eq!(searcher.build_chain(&s, 64), Chain::Indeterminate);
    }

    #[test]
    fn enumerate_examples() {
        let any = sys(3, 2, &[(2, 0)], &[]);
        assert_eq!(enumerate(&any, 1, 10).sequences, seqs(&[&[2]]));
        let one = sys(1, 0, &[(0, 0)], &[(0, 0)]);
        assert_eq!(enumerate(&one, 5, 10).sequences, seqs(&[&[0, 0, 0, 0, 0]]));
        let two = sys(2, 0, &[(0, 0), (0, 1)], &[(0, 0), (0, 1)]);
        let e = enumerate(&two, 2, 10);
        assert_eq!(e.sequences, seqs(&[&[0, 0], &[0, 1]]));
        assert!(!e.truncated);
        let e = enumerate(&two, 2, 1);
        assert_eq!(e.sequences, seqs(&[&[0, 0]]));
        assert!(e.truncated);
        let e = enumerate(&two, 2, 2);
        assert!(!e.truncated);
        assert!(enumerate(&two, 0, 10).sequences.is_empty());
    }

    #[test]
    fn profile_examples() {
        let b = SearchBudget::new(6, 1);
        let p = length_profile(&sys(1, 0, &[], &[(0, 0)]), b).unwrap();
        assert_eq!(p.counts, vec![1, 1, 0, 0, 0, 0]);
        assert_eq!(p.longest(), 2);
    }

    #[test]
    fn extendable_examples() {
        let one = sys(1, 0, &[(0, 0)], &[(0, 0)]);
        assert_eq!(extendable_colors(&one, &vec![0].into(), 10), vec![0]);
        let stub = sys(1, 0, &[], &[(0, 0)]);
        assert!(extendable_colors(&stub, &vec![0].into(), 3).is_empty());
        assert_eq!(extendable_colors(&stub, &vec![0].into(), 2), vec![0]);
        // horizon no longer than the prefix still asks for one more color
        assert_eq!(extendable_colors(&stub, &vec![0].into(), 1), vec![0]);
    }

    #[test]
    fn chain_examples() {
        let b = SearchBudget::default();
        let one = sys(1, 0, &[(0, 0)], &[(0, 0)]);
        assert_eq!(build_chain(&one, 7, b), Chain::Reached(vec![0; 7].into()));
        assert_eq!(build_chain(&sys(1, 0, &[], &[]), 2, b), Chain::Unreachable);
        assert_eq!(build_chain(&one, 0, b), Chain::Unreachable);
    }

    #[test]
    fn witness_examples() {
        let b = SearchBudget::new(10, 4);
        let w = find_periodic_witness(&sys(1, 0, &[(0, 0)], &[(0, 0)]), b).unwrap();
        assert_eq!((w.p(), w.q(), w.rows()), (1, 1, vec![vec![0]]));
        assert!(find_periodic_witness(&sys(1, 0, &[], &[(0, 0)]), SearchBudget::new(10, 8)).is_none());
        let alt = sys(2, 0, &[(0, 1), (1, 0)], &[(0, 0), (1, 1)]);
        let w = find_periodic_witness(&alt, b).unwrap();
        assert_eq!((w.p(), w.q(), w.rows()), (2, 1, vec![vec![0, 1]]));
        assert!(w.verify(&alt).is_ok());
    }

    #[test]
    fn classify_examples() {
        let b = SearchBudget::new(10, 2);
        assert_eq!(classify(&sys(1, 0, &[], &[]), b), Verdict::Bounded { max_length: 1 });
        assert!(matches!(classify(&sys(1, 0, &[(0, 0)], &[(0, 0)]), b), Verdict::HasColoring(_)));
        assert_eq!(
            classify(&sys(1, 0, &[], &[(0, 0)]), SearchBudget::new(2, 2)),
            Verdict::Unknown { depth_reached: 2, period_cap_reached: 2 }
        );
    }

    #[test]
    fn verdict_json() {
        let v = Verdict::Bounded { max_length: 3 };
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"verdict":"bounded","max_length":3}"#);
        let w = Verdict::HasColoring(PeriodicWitness::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap());
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"verdict":"has_coloring","p":2,"q":2,"cells":[[0,1],[1,0]]}"#);
        assert_eq!(serde_json::from_str::<Verdict>(&s).unwrap(), w);
        let u = Verdict::Unknown { depth_reached: 32, period_cap_reached: 4 };
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(s, r#"{"verdict":"unknown","depth_reached":32,"period_cap_reached":4}"#);
        assert!(serde_json::from_str::<Verdict>(r#"{"verdict":"has_coloring","p":3,"q":1,"cells":[[0,1]]}"#)
            .is_err());
    }
}
