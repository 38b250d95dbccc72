//! Exhaustive and heuristic searches for disjoint self-complementary
//! single-error-correcting codes.
//!
//! A self-complementary code is a union of all-one-shift orbits, so the
//! search works on orbit atoms: the `q^(n-1)` orbit representatives with
//! first digit 0. An atom is admissible when all its intra-orbit pairs
//! have asymmetric distance at least 2, and two atoms are compatible when
//! every cross pair over both orbits does. A family of disjoint 1-codes is
//! then a collection of disjoint cliques in the compatibility graph, which
//! is explored by branch and bound with bitset candidate sets.

use crate::error::{Error, Result};
use crate::metrics;
use crate::qudit::{ClassicalCode, QuditString};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub node_cap: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            node_cap: DEFAULT_NODE_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Greedy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    Found,
    ExhaustedNegative,
    BoundReached,
}

/// Result of a search run. Found codes are re-verified from scratch before
/// the certificate is issued.
#[derive(Clone, Debug)]
pub struct SearchCertificate {
    pub problem: String,
    pub q: u8,
    pub n: usize,
    pub parts: usize,
    /// Requested (partition) or achieved (max search) words per part.
    pub words_per_part: usize,
    pub outcome: SearchOutcome,
    pub found: Option<Vec<ClassicalCode>>,
    /// For max searches with a completed optimality proof.
    pub optimum_words_per_part: Option<usize>,
    pub nodes: u64,
    pub elapsed_ms: u128,
    /// Reductions and proof steps applied, for auditability.
    pub reductions: Vec<String>,
}

type Bits = Vec<u64>;

fn bits_new(n: usize) -> Bits {
    vec![0u64; n.div_ceil(64)]
}

fn bit_get(b: &[u64], i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn bit_set(b: &mut [u64], i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

struct AtomGraph {
    q: u8,
    n: usize,
    reps: Vec<QuditString>,
    admissible: Vec<bool>,
    adj: Vec<Bits>,
}

impl AtomGraph {
    fn build(q: u8, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("length must be >= 1".into()));
        }
        let count = (q as u64).checked_pow((n - 1) as u32).ok_or_else(|| {
            Error::ResourceCap("atom count overflows".into())
        })?;
        if count > 20_000 {
            return Err(Error::ResourceCap(format!(
                "{count} orbit atoms exceed the supported search scale"
            )));
        }
        let na = count as usize;
        let mut reps = Vec::with_capacity(na);
        let mut digits = vec![0u8; n];
        loop {
            reps.push(QuditString::new(q, digits.clone())?);
            let mut i = n;
            let mut done = true;
            while i > 1 {
                i -= 1;
                digits[i] += 1;
                if digits[i] < q {
                    done = false;
                    break;
                }
                digits[i] = 0;
            }
            if done {
                break;
            }
        }
        debug_assert_eq!(reps.len(), na);

        let orbits: Vec<Vec<QuditString>> = reps.iter().map(|r| r.orbit()).collect();
        let admissible: Vec<bool> = orbits
            .iter()
            .map(|orb| {
                (0..orb.len()).all(|a| {
                    ((a + 1)..orb.len())
                        .all(|b| metrics::delta(&orb[a], &orb[b]).unwrap() >= 2)
                })
            })
            .collect();
        let mut adj = vec![bits_new(na); na];
        for i in 0..na {
            if !admissible[i] {
                continue;
            }
            for j in (i + 1)..na {
                if !admissible[j] {
                    continue;
                }
                let ok = orbits[i].iter().all(|x| {
                    orbits[j]
                        .iter()
                        .all(|y| metrics::delta(x, y).unwrap() >= 2)
                });
                if ok {
                    bit_set(&mut adj[i], j);
                    bit_set(&mut adj[j], i);
                }
            }
        }
        Ok(Self {
            q,
            n,
            reps,
            admissible,
            adj,
        })
    }

    fn atoms_to_code(&self, atoms: &[usize]) -> Result<ClassicalCode> {
        ClassicalCode::from_tilde(
            self.q,
            self.n,
            atoms.iter().map(|&a| self.reps[a].clone()),
        )
    }
}

struct CliqueSearch<'g> {
    g: &'g AtomGraph,
    nodes: u64,
    cap: u64,
    capped: bool,
    best: usize,
    best_set: Vec<usize>,
    stack: Vec<usize>,
    /// Stop as soon as a clique of this size is found.
    target: Option<usize>,
}

impl<'g> CliqueSearch<'g> {
    fn new(g: &'g AtomGraph, cap: u64, target: Option<usize>) -> Self {
        Self {
            g,
            nodes: 0,
            cap,
            capped: false,
            best: 0,
            best_set: Vec::new(),
            stack: Vec::new(),
            target,
        }
    }

    fn reached_target(&self) -> bool {
        self.target.is_some_and(|t| self.best >= t)
    }

    /// Greedy coloring of the candidate list; returns `(vertex, bound)`
    /// with bounds nondecreasing.
    fn color_sort(&self, cands: &[usize]) -> Vec<(usize, usize)> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in cands {
            let mut placed = false;
            for class in classes.iter_mut() {
                if class.iter().all(|&u| !bit_get(&self.g.adj[v], u)) {
                    class.push(v);
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(vec![v]);
            }
        }
        let mut out = Vec::with_capacity(cands.len());
        for (ci, class) in classes.iter().enumerate() {
            for &v in class {
                out.push((v, ci + 1));
            }
        }
        out
    }

    fn expand(&mut self, cands: Vec<usize>) {
        self.nodes += 1;
        if self.nodes > self.cap {
            self.capped = true;
            return;
        }
        if self.capped || self.reached_target() {
            return;
        }
        if cands.is_empty() {
            if self.stack.len() > self.best {
                self.best = self.stack.len();
                self.best_set = self.stack.clone();
            }
            return;
        }
        let ordered = self.color_sort(&cands);
        let verts: Vec<usize> = ordered.iter().map(|&(v, _)| v).collect();
        for i in (0..ordered.len()).rev() {
            if self.capped || self.reached_target() {
                return;
            }
            let (v, bound) = ordered[i];
            if self.stack.len() + bound <= self.best {
                return;
            }
            let next: Vec<usize> = verts[..i]
                .iter()
                .copied()
                .filter(|&u| bit_get(&self.g.adj[v], u))
                .collect();
            self.stack.push(v);
            self.expand(next);
            self.stack.pop();
        }
    }

    fn run(&mut self) {
        let cands: Vec<usize> = (0..self.g.reps.len())
            .filter(|&i| self.g.admissible[i])
            .collect();
        self.expand(cands);
    }
}

struct PackSearch<'g> {
    g: &'g AtomGraph,
    parts: usize,
    per_part: usize,
    full_cover: bool,
    order: Vec<usize>,
    /// suffix_adm[pos] = admissible atoms at order positions >= pos.
    suffix_adm: Vec<Bits>,
    nodes: u64,
    cap: u64,
    capped: bool,
    members: Vec<Vec<usize>>,
    cands: Vec<Bits>,
    solution: Option<Vec<Vec<usize>>>,
}

impl<'g> PackSearch<'g> {
    fn new(
        g: &'g AtomGraph,
        parts: usize,
        per_part: usize,
        full_cover: bool,
        order: Vec<usize>,
        cap: u64,
    ) -> Self {
        let na = g.reps.len();
        let mut suffix_adm = vec![bits_new(na); order.len() + 1];
        for pos in (0..order.len()).rev() {
            suffix_adm[pos] = suffix_adm[pos + 1].clone();
            if g.admissible[order[pos]] {
                bit_set(&mut suffix_adm[pos], order[pos]);
            }
        }
        Self {
            g,
            parts,
            per_part,
            full_cover,
            order,
            suffix_adm,
            nodes: 0,
            cap,
            capped: false,
            members: Vec::new(),
            cands: Vec::new(),
            solution: None,
        }
    }

    fn dfs(&mut self, pos: usize) {
        self.nodes += 1;
        if self.nodes > self.cap {
            self.capped = true;
        }
        if self.capped || self.solution.is_some() {
            return;
        }
        let open_deficit: usize = self
            .members
            .iter()
            .map(|m| self.per_part - m.len())
            .sum::<usize>();
        let unopened = self.parts - self.members.len();
        if open_deficit == 0 && unopened == 0 {
            if !self.full_cover || pos == self.order.len() {
                self.solution = Some(self.members.clone());
            }
            return;
        }
        if pos == self.order.len() {
            return;
        }
        let suffix = &self.suffix_adm[pos];
        let available = suffix.iter().map(|w| w.count_ones() as usize).sum::<usize>();
        if available < open_deficit + unopened * self.per_part {
            return;
        }
        for (p, m) in self.members.iter().enumerate() {
            let need = self.per_part - m.len();
            if need > 0 && and_count(&self.cands[p], suffix) < need {
                return;
            }
        }

        let atom = self.order[pos];
        if self.g.admissible[atom] {
            // join an open part
            for p in 0..self.members.len() {
                if self.members[p].len() < self.per_part && bit_get(&self.cands[p], atom) {
                    let saved = self.cands[p].clone();
                    self.members[p].push(atom);
                    for (w, a) in self.cands[p].iter_mut().zip(&self.g.adj[atom]) {
                        *w &= a;
                    }
                    self.dfs(pos + 1);
                    self.members[p].pop();
                    self.cands[p] = saved;
                    if self.capped || self.solution.is_some() {
                        return;
                    }
                }
            }
            // open the next part
            if self.members.len() < self.parts {
                self.members.push(vec![atom]);
                self.cands.push(self.g.adj[atom].clone());
                self.dfs(pos + 1);
                self.members.pop();
                self.cands.pop();
                if self.capped || self.solution.is_some() {
                    return;
                }
            }
        } else if self.full_cover {
            return;
        }
        // leave the atom unused
        if !self.full_cover || !self.g.admissible[atom] {
            self.dfs(pos + 1);
        }
    }
}

/// Complement over admissible atoms: adjacency marks incompatibility.
fn complement_graph(g: &AtomGraph) -> AtomGraph {
    let na = g.reps.len();
    let mut adj = vec![bits_new(na); na];
    for i in 0..na {
        if !g.admissible[i] {
            continue;
        }
        for j in 0..na {
            if i != j && g.admissible[j] && !bit_get(&g.adj[i], j) {
                bit_set(&mut adj[i], j);
            }
        }
    }
    AtomGraph {
        q: g.q,
        n: g.n,
        reps: g.reps.clone(),
        admissible: g.admissible.clone(),
        adj,
    }
}

fn verify_parts(g: &AtomGraph, parts: &[Vec<usize>]) -> Result<Vec<ClassicalCode>> {
    let codes = parts
        .iter()
        .map(|atoms| g.atoms_to_code(atoms))
        .collect::<Result<Vec<_>>>()?;
    let mut seen = std::collections::BTreeSet::new();
    for code in &codes {
        if !metrics::is_self_complementary(code) {
            return Err(Error::Construction(
                "search result is not self-complementary".into(),
            ));
        }
        if !metrics::is_t_code(code, 1) {
            return Err(Error::Construction("search result is not a 1-code".into()));
        }
        for w in code.iter() {
            if !seen.insert(w.clone()) {
                return Err(Error::Construction("search parts are not disjoint".into()));
            }
        }
    }
    Ok(codes)
}

fn pack_decision(
    g: &AtomGraph,
    parts: usize,
    per_part_atoms: usize,
    full_cover: bool,
    cap: u64,
    nodes_used: &mut u64,
    order: Option<Vec<usize>>,
) -> Result<Option<Vec<Vec<usize>>>> {
    let order = order.unwrap_or_else(|| (0..g.reps.len()).collect());
    let mut search = PackSearch::new(g, parts, per_part_atoms, full_cover, order, cap);
    search.dfs(0);
    *nodes_used += search.nodes;
    if search.capped {
        return Err(Error::ResourceCap(format!(
            "node cap hit after {} nodes",
            search.nodes
        )));
    }
    Ok(search.solution)
}

/// Searches for `parts` disjoint self-complementary 1-codes of exactly
/// `size_per_part` words each, or certifies that none exist.
pub fn partition_search(
    q: u8,
    n: usize,
    parts: usize,
    size_per_part: usize,
    limits: SearchLimits,
) -> Result<SearchCertificate> {
    partition_search_ordered(q, n, parts, size_per_part, limits, None)
}

/// [`partition_search`] with an explicit atom processing order, used to
/// check that certificates do not depend on search order.
pub fn partition_search_ordered(
    q: u8,
    n: usize,
    parts: usize,
    size_per_part: usize,
    limits: SearchLimits,
    order: Option<Vec<usize>>,
) -> Result<SearchCertificate> {
    let start = Instant::now();
    if parts == 0 || size_per_part == 0 || size_per_part % q as usize != 0 {
        return Err(Error::InvalidParameter(format!(
            "need parts >= 1 and a part size divisible by q, got {parts} x {size_per_part}"
        )));
    }
    let per_atoms = size_per_part / q as usize;
    let g = AtomGraph::build(q, n)?;
    let total_strings = (q as usize).pow(n as u32);
    let full_cover = parts * size_per_part == total_strings;
    let mut reductions = vec![format!(
        "search atoms are the {} all-one-shift orbits; a self-complementary code is a union of \
         orbits",
        g.reps.len()
    )];
    let mut nodes = 0u64;
    let problem = format!(
        "partition q={q} n={n} into {parts} disjoint self-complementary 1-codes of \
         {size_per_part} words"
    );

    if full_cover {
        reductions.push("parts cover every string, so every atom must be used".into());
        if let Some(bad) = g.admissible.iter().position(|&a| !a) {
            reductions.push(format!(
                "orbit of {} is not internally a 1-code, so no partition exists",
                g.reps[bad]
            ));
            return Ok(SearchCertificate {
                problem,
                q,
                n,
                parts,
                words_per_part: size_per_part,
                outcome: SearchOutcome::ExhaustedNegative,
                found: None,
                optimum_words_per_part: None,
                nodes,
                elapsed_ms: start.elapsed().as_millis(),
                reductions,
            });
        }
        // parts+1 pairwise-incompatible atoms cannot share parts, so they
        // obstruct any full cover by `parts` parts
        let complement = complement_graph(&g);
        let mut witness = CliqueSearch::new(&complement, limits.node_cap, Some(parts + 1));
        witness.run();
        nodes += witness.nodes;
        if !witness.capped && witness.reached_target() {
            let names: Vec<String> = witness
                .best_set
                .iter()
                .map(|&a| g.reps[a].to_string())
                .collect();
            reductions.push(format!(
                "orbits of {} are pairwise incompatible; {} parts cannot cover them",
                names.join(", "),
                parts
            ));
            return Ok(SearchCertificate {
                problem,
                q,
                n,
                parts,
                words_per_part: size_per_part,
                outcome: SearchOutcome::ExhaustedNegative,
                found: None,
                optimum_words_per_part: None,
                nodes,
                elapsed_ms: start.elapsed().as_millis(),
                reductions,
            });
        }
    }

    // A single part is a clique of per_atoms atoms; prove or disprove that
    // first, since a negative settles the whole problem.
    let mut clique = CliqueSearch::new(&g, limits.node_cap, Some(per_atoms));
    clique.run();
    nodes += clique.nodes;
    if !clique.capped && !clique.reached_target() {
        reductions.push(format!(
            "exhaustive clique search proves no single self-complementary 1-code with \
             {per_atoms} orbits exists (max found: {})",
            clique.best
        ));
        return Ok(SearchCertificate {
            problem,
            q,
            n,
            parts,
            words_per_part: size_per_part,
            outcome: SearchOutcome::ExhaustedNegative,
            found: None,
            optimum_words_per_part: None,
            nodes,
            elapsed_ms: start.elapsed().as_millis(),
            reductions,
        });
    }
    if clique.capped {
        reductions.push("single-part clique precheck hit the node cap and was skipped".into());
    }

    let remaining_cap = limits.node_cap.saturating_sub(nodes).max(1);
    match pack_decision(&g, parts, per_atoms, full_cover, remaining_cap, &mut nodes, order) {
        Ok(Some(parts_atoms)) => {
            let codes = verify_parts(&g, &parts_atoms)?;
            Ok(SearchCertificate {
                problem,
                q,
                n,
                parts,
                words_per_part: size_per_part,
                outcome: SearchOutcome::Found,
                found: Some(codes),
                optimum_words_per_part: None,
                nodes,
                elapsed_ms: start.elapsed().as_millis(),
                reductions,
            })
        }
        Ok(None) => {
            reductions.push("branch-and-bound exhausted the assignment space".into());
            Ok(SearchCertificate {
                problem,
                q,
                n,
                parts,
                words_per_part: size_per_part,
                outcome: SearchOutcome::ExhaustedNegative,
                found: None,
                optimum_words_per_part: None,
                nodes,
                elapsed_ms: start.elapsed().as_millis(),
                reductions,
            })
        }
        Err(Error::ResourceCap(msg)) => {
            reductions.push(format!("search stopped: {msg}"));
            Ok(SearchCertificate {
                problem,
                q,
                n,
                parts,
                words_per_part: size_per_part,
                outcome: SearchOutcome::BoundReached,
                found: None,
                optimum_words_per_part: None,
                nodes,
                elapsed_ms: start.elapsed().as_millis(),
                reductions,
            })
        }
        Err(e) => Err(e),
    }
}

/// Atom sets of the embedded inner families matching `(q, n)`, used as
/// warm starts so the greedy mode always re-finds the published codes.
fn embedded_warm_start(g: &AtomGraph, parts: usize) -> Option<Vec<Vec<usize>>> {
    use crate::constructions::{inner_entry, InnerFamily};
    let family = match (g.q, g.n) {
        (3, 5) => InnerFamily::Len5NonlinearQ3,
        (5, 3) => InnerFamily::Len3NonlinearQ5,
        (5, 5) => InnerFamily::Len5NonlinearQ5,
        (4, 3) => InnerFamily::Len3Q4,
        (q, 2) if q >= 3 => InnerFamily::Length2Cosets,
        _ => return None,
    };
    let entry = inner_entry(family, g.q).ok()?;
    if entry.codes.len() < parts {
        return None;
    }
    let mut out = Vec::with_capacity(parts);
    for code in entry.codes.iter().take(parts) {
        let with = code.orbit_transversal().ok()?;
        let atoms: Option<Vec<usize>> = with
            .tilde()
            .unwrap()
            .iter()
            .map(|rep| g.reps.binary_search(rep).ok())
            .collect();
        out.push(atoms?);
    }
    Some(out)
}

fn greedy_extend(g: &AtomGraph, parts_atoms: &mut [Vec<usize>]) {
    let na = g.reps.len();
    let mut used = bits_new(na);
    for part in parts_atoms.iter() {
        for &a in part {
            bit_set(&mut used, a);
        }
    }
    for part in parts_atoms.iter_mut() {
        let mut cands = bits_new(na);
        for (i, w) in cands.iter_mut().enumerate() {
            *w = !used[i];
        }
        for (i, adm) in g.admissible.iter().enumerate() {
            if !adm && bit_get(&cands, i) {
                cands[i / 64] ^= 1 << (i % 64);
            }
        }
        for &a in part.iter() {
            for (w, adjw) in cands.iter_mut().zip(&g.adj[a]) {
                *w &= adjw;
            }
        }
        loop {
            let next = (0..na).find(|&i| bit_get(&cands, i));
            let Some(v) = next else { break };
            part.push(v);
            bit_set(&mut used, v);
            for (w, adjw) in cands.iter_mut().zip(&g.adj[v]) {
                *w &= adjw;
            }
            cands[v / 64] &= !(1 << (v % 64));
        }
    }
}

fn greedy_parts(g: &AtomGraph, parts: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let na = g.reps.len();
    let mut order: Vec<usize> = (0..na).filter(|&i| g.admissible[i]).collect();
    order.shuffle(rng);
    let mut used = bits_new(na);
    let mut result = Vec::with_capacity(parts);
    for _ in 0..parts {
        let Some(seed) = order.iter().copied().find(|&v| !bit_get(&used, v)) else {
            result.push(Vec::new());
            continue;
        };
        let mut clique = vec![seed];
        bit_set(&mut used, seed);
        let mut cands = g.adj[seed].clone();
        for (i, w) in used.iter().enumerate() {
            cands[i] &= !w;
        }
        while let Some(&v) = order.iter().find(|&&v| bit_get(&cands, v)) {
            clique.push(v);
            bit_set(&mut used, v);
            for (w, adjw) in cands.iter_mut().zip(&g.adj[v]) {
                *w &= adjw;
            }
            cands[v / 64] &= !(1 << (v % 64));
        }
        result.push(clique);
    }
    result
}

/// Maximizes the common size of `parts` disjoint self-complementary
/// 1-codes. Exhaustive mode proves optimality; greedy mode reports a
/// seeded lower bound (warm-started from the embedded code families, so it
/// never undercuts the published sizes).
pub fn max_code_search(
    q: u8,
    n: usize,
    parts: usize,
    mode: SearchMode,
    limits: SearchLimits,
    seed: u64,
) -> Result<SearchCertificate> {
    let start = Instant::now();
    if parts == 0 {
        return Err(Error::InvalidParameter("parts must be >= 1".into()));
    }
    let g = AtomGraph::build(q, n)?;
    let mut nodes = 0u64;
    let mut reductions = vec![format!("{} orbit atoms", g.reps.len())];
    let problem = format!(
        "maximize the common size of {parts} disjoint self-complementary 1-codes, q={q} n={n}, \
         {mode:?} mode"
    );

    // Greedy lower bound, warm-started from the embedded families.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_parts: Vec<Vec<usize>> = Vec::new();
    let mut best = 0usize;
    let consider = |cand: Vec<Vec<usize>>, best: &mut usize, best_parts: &mut Vec<Vec<usize>>| {
        if cand.len() < parts {
            return;
        }
        let m = cand.iter().map(|p| p.len()).min().unwrap_or(0);
        if m > *best {
            *best = m;
            *best_parts = cand
                .into_iter()
                .take(parts)
                .map(|mut p| {
                    p.truncate(m);
                    p
                })
                .collect();
        }
    };
    if let Some(mut warm) = embedded_warm_start(&g, parts) {
        reductions.push(format!(
            "warm start from the embedded family with {} orbits per part",
            warm.iter().map(|p| p.len()).min().unwrap_or(0)
        ));
        greedy_extend(&g, &mut warm);
        consider(warm, &mut best, &mut best_parts);
    }
    let restarts = if matches!(mode, SearchMode::Greedy) { 64 } else { 16 };
    for _ in 0..restarts {
        let cand = greedy_parts(&g, parts, &mut rng);
        consider(cand, &mut best, &mut best_parts);
    }

    if matches!(mode, SearchMode::Greedy) {
        let codes = verify_parts(&g, &best_parts)?;
        reductions.push("greedy lower bound; optimality not claimed".into());
        return Ok(SearchCertificate {
            problem,
            q,
            n,
            parts,
            words_per_part: best * q as usize,
            outcome: SearchOutcome::Found,
            found: Some(codes),
            optimum_words_per_part: None,
            nodes,
            elapsed_ms: start.elapsed().as_millis(),
            reductions,
        });
    }

    // Exhaustive: push the lower bound up by decision searches until one
    // exhausts negative.
    if parts == 1 {
        let mut clique = CliqueSearch::new(&g, limits.node_cap, None);
        clique.run();
        nodes += clique.nodes;
        if clique.capped {
            reductions.push("max-clique search hit the node cap".into());
            let codes = verify_parts(&g, std::slice::from_ref(&clique.best_set))?;
            return Ok(SearchCertificate {
                problem,
                q,
                n,
                parts,
                words_per_part: clique.best * q as usize,
                outcome: SearchOutcome::BoundReached,
                found: Some(codes),
                optimum_words_per_part: None,
                nodes,
                elapsed_ms: start.elapsed().as_millis(),
                reductions,
            });
        }
        let codes = verify_parts(&g, std::slice::from_ref(&clique.best_set))?;
        reductions.push("exhaustive branch-and-bound clique maximization".into());
        return Ok(SearchCertificate {
            problem,
            q,
            n,
            parts,
            words_per_part: clique.best * q as usize,
            outcome: SearchOutcome::Found,
            found: Some(codes),
            optimum_words_per_part: Some(clique.best * q as usize),
            nodes,
            elapsed_ms: start.elapsed().as_millis(),
            reductions,
        });
    }

    let ceiling = g.admissible.iter().filter(|&&a| a).count() / parts;
    loop {
        let target = best + 1;
        if target > ceiling {
            reductions.push(format!(
                "only {} admissible atoms exist, so {} per part is impossible",
                ceiling * parts,
                target
            ));
            break;
        }
        // A single part is a clique; its nonexistence settles the target.
        let mut clique = CliqueSearch::new(&g, limits.node_cap.saturating_sub(nodes).max(1), Some(target));
        clique.run();
        nodes += clique.nodes;
        if clique.capped {
            reductions.push("single-part clique decision hit the node cap".into());
            let codes = verify_parts(&g, &best_parts)?;
            return Ok(SearchCertificate {
                problem,
                q,
                n,
                parts,
                words_per_part: best * q as usize,
                outcome: SearchOutcome::BoundReached,
                found: Some(codes),
                optimum_words_per_part: None,
                nodes,
                elapsed_ms: start.elapsed().as_millis(),
                reductions,
            });
        }
        if !clique.reached_target() {
            reductions.push(format!(
                "exhaustive clique search proves no single part with {target} orbits exists \
                 (max found: {})",
                clique.best
            ));
            break;
        }
        let remaining = limits.node_cap.saturating_sub(nodes).max(1);
        match pack_decision(&g, parts, target, false, remaining, &mut nodes, None) {
            Ok(Some(sol)) => {
                best = target;
                best_parts = sol;
            }
            Ok(None) => {
                reductions.push(format!(
                    "decision search for {target} orbits per part exhausted negative"
                ));
                break;
            }
            Err(Error::ResourceCap(msg)) => {
                reductions.push(format!("optimality unresolved: {msg}"));
                let codes = verify_parts(&g, &best_parts)?;
                return Ok(SearchCertificate {
                    problem,
                    q,
                    n,
                    parts,
                    words_per_part: best * q as usize,
                    outcome: SearchOutcome::BoundReached,
                    found: Some(codes),
                    optimum_words_per_part: None,
                    nodes,
                    elapsed_ms: start.elapsed().as_millis(),
                    reductions,
                });
            }
            Err(e) => return Err(e),
        }
    }
    let codes = verify_parts(&g, &best_parts)?;
    Ok(SearchCertificate {
        problem,
        q,
        n,
        parts,
        words_per_part: best * q as usize,
        outcome: SearchOutcome::Found,
        found: Some(codes),
        optimum_words_per_part: Some(best * q as usize),
        nodes,
        elapsed_ms: start.elapsed().as_millis(),
        reductions,
    })
}
