//! Congruences and theta-congruences of finite LM_n-algebras.
//!
//! A congruence is stored as a canonical partition: every element points at
//! the least index of its class. The dual side works with subsets of
//! `X(A)`; on a finite space every subset is clopen, so "closed" and "open"
//! qualifiers are automatic and closure is [`closure`], the identity.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::duality::{chain_decomposition, Dual, LnPSpace};
use crate::error::CongruenceError;
use crate::lm::LmAlgebra;
use crate::poset::Poset;
use crate::subset::Subset;

/// Default bound on `|X(A)|` for exhaustive subset scans.
pub const DEFAULT_MAX_SPACE_SIZE: usize = 20;

/// Hard limit for scanning `2^|X|` subsets.
const SCAN_LIMIT: usize = 30;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    class_of: Vec<usize>,
}

impl Congruence {
    pub fn identity(len: usize) -> Self {
        Congruence {
            class_of: (0..len).collect(),
        }
    }

    pub fn total(len: usize) -> Self {
        Congruence {
            class_of: vec![0; len],
        }
    }

    /// Elements with equal keys are related.
    pub fn from_key<K: Eq + std::hash::Hash>(len: usize, key: impl Fn(usize) -> K) -> Self {
        let mut first: HashMap<K, usize> = HashMap::new();
        let class_of = (0..len).map(|x| *first.entry(key(x)).or_insert(x)).collect();
        Congruence { class_of }
    }

    /// `None` unless `rel` is an equivalence relation.
    pub fn from_relation(len: usize, rel: impl Fn(usize, usize) -> bool) -> Option<Self> {
        let mut class_of = vec![usize::MAX; len];
        for x in 0..len {
            if class_of[x] != usize::MAX {
                continue;
            }
            for y in x..len {
                if rel(x, y) {
                    if class_of[y] != usize::MAX {
                        return None;
                    }
                    class_of[y] = x;
                }
            }
        }
        let c = Congruence { class_of };
        let consistent = (0..len).all(|x| (0..len).all(|y| rel(x, y) == c.related(x, y)));
        consistent.then_some(c)
    }

    fn from_union_find(uf: &mut UnionFind) -> Self {
        let len = uf.parent.len();
        let mut least = vec![usize::MAX; len];
        for x in 0..len {
            let r = uf.find(x);
            if least[r] == usize::MAX {
                least[r] = x;
            }
        }
        Congruence {
            class_of: (0..len).map(|x| least[uf.find(x)]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    /// Least member of the class of `x`.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn class(&self, x: usize) -> Subset {
        let c = self.class_of[x];
        (0..self.len()).filter(|&y| self.class_of[y] == c).collect()
    }

    /// Classes ordered by least member.
    pub fn classes(&self) -> Vec<Subset> {
        (0..self.len())
            .filter(|&x| self.class_of[x] == x)
            .map(|x| self.class(x))
            .collect()
    }

    pub fn num_classes(&self) -> usize {
        (0..self.len()).filter(|&x| self.class_of[x] == x).count()
    }

    pub fn is_identity(&self) -> bool {
        self.num_classes() == self.len()
    }

    pub fn is_total(&self) -> bool {
        self.num_classes() <= 1
    }

    /// Inclusion of relations.
    pub fn le(&self, other: &Congruence) -> bool {
        self.len() == other.len()
            && (0..self.len()).all(|x| other.related(x, self.class_of[x]))
    }

    fn check_len(&self, other: &Congruence) -> Result<(), CongruenceError> {
        if self.len() != other.len() {
            return Err(CongruenceError::AlgebraMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    /// Intersection.
    pub fn meet(&self, other: &Congruence) -> Result<Congruence, CongruenceError> {
        self.check_len(other)?;
        Ok(Congruence::from_key(self.len(), |x| {
            (self.class_of[x], other.class_of[x])
        }))
    }

    /// Transitive closure of the union.
    pub fn join(&self, other: &Congruence) -> Result<Congruence, CongruenceError> {
        self.check_len(other)?;
        let mut uf = UnionFind::new(self.len());
        for x in 0..self.len() {
            uf.union(x, self.class_of[x]);
            uf.union(x, other.class_of[x]);
        }
        Ok(Congruence::from_union_find(&mut uf))
    }

    /// Rows of the relation: `rows[x]` is the class of `x`.
    pub fn rows(&self) -> Vec<Subset> {
        let classes: HashMap<usize, Subset> = self
            .classes()
            .into_iter()
            .map(|c| (c.first().unwrap(), c))
            .collect();
        (0..self.len()).map(|x| classes[&self.class_of[x]]).collect()
    }

    pub fn is_lattice_compatible(&self, a: &LmAlgebra) -> bool {
        self.len() == a.len()
            && (0..a.len()).all(|x| {
                let r = self.class_of[x];
                (0..a.len()).all(|c| {
                    self.related(a.join(x, c), a.join(r, c)) && self.related(a.meet(x, c), a.meet(r, c))
                })
            })
    }

    /// Lattice congruence that also respects every `phi_i` and `phi_bar_i`.
    pub fn is_lm_compatible(&self, a: &LmAlgebra) -> bool {
        self.is_lattice_compatible(a)
            && (0..a.len()).all(|x| {
                let r = self.class_of[x];
                a.indices().all(|i| {
                    self.related(a.phi(i, x), a.phi(i, r))
                        && self.related(a.phi_bar(i, x), a.phi_bar(i, r))
                })
            })
    }

    /// Lattice congruence with `(x,y)` related iff every `(phi_i x, phi_i y)` is.
    pub fn is_theta_compatible(&self, a: &LmAlgebra) -> bool {
        self.is_lattice_compatible(a)
            && (0..a.len()).all(|x| {
                (0..a.len()).all(|y| {
                    self.related(x, y) == a.indices().all(|i| self.related(a.phi(i, x), a.phi(i, y)))
                })
            })
    }

    /// Writes the classes using element names.
    pub fn describe(&self, a: &LmAlgebra) -> String {
        let parts: Vec<String> = self
            .classes()
            .into_iter()
            .map(|c| format!("{{{}}}", a.poset().names_of(c).join(",")))
            .collect();
        parts.join(" ")
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.classes()).finish()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// True if two classes were merged.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[rx.max(ry)] = rx.min(ry);
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Congruences respecting the lattice operations and every `phi_i`, `phi_bar_i`.
    Lm,
    /// Lattice congruences with `x ~ y` iff `phi_i x ~ phi_i y` for all `i`.
    Theta,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Lm => "lm",
            Mode::Theta => "theta",
        })
    }
}

/// Least congruence containing `pairs`, by fixpoint iteration over the
/// closure rules of `mode`. Uses no dual-space information.
pub fn generate_congruence_oracle(a: &LmAlgebra, pairs: &[(usize, usize)], mode: Mode) -> Congruence {
    let m = a.len();
    let mut uf = UnionFind::new(m);
    for &(x, y) in pairs {
        uf.union(x, y);
    }
    loop {
        let mut changed = false;
        for x in 0..m {
            let r = uf.find(x);
            if r == x {
                continue;
            }
            for c in 0..m {
                changed |= uf.union(a.join(x, c), a.join(r, c));
                changed |= uf.union(a.meet(x, c), a.meet(r, c));
            }
            for i in a.indices() {
                changed |= uf.union(a.phi(i, x), a.phi(i, r));
                if mode == Mode::Lm {
                    changed |= uf.union(a.phi_bar(i, x), a.phi_bar(i, r));
                }
            }
        }
        if mode == Mode::Theta {
            for x in 0..m {
                for y in x + 1..m {
                    if uf.find(x) != uf.find(y)
                        && a.indices().all(|i| uf.find(a.phi(i, x)) == uf.find(a.phi(i, y)))
                    {
                        uf.union(x, y);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Congruence::from_union_find(&mut uf)
}

/// Closure in the discrete topology of a finite space.
pub fn closure(y: Subset) -> Subset {
    y
}

/// Classification of a subset of a space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetFlags {
    pub increasing: bool,
    pub decreasing: bool,
    pub convex: bool,
    /// `U_i f_i(Y)` is contained in `Y`.
    pub semimodal: bool,
    /// `Y = f_i^{-1}(Y)` for every `i`.
    pub modal: bool,
    /// `Y = U_i f_i(Y)`.
    pub theta: bool,
    /// `Y` is a union of connected components of the order, computed
    /// without the maps.
    pub chain_union: bool,
}

impl SubsetFlags {
    /// For nonempty `Y`: semimodal, modal and union of maximal chains agree.
    pub fn lemma_holds(&self) -> bool {
        self.semimodal == self.modal && self.modal == self.chain_union
    }
}

pub fn is_semimodal(x: &LnPSpace, y: Subset) -> bool {
    x.union_of_images(y).is_subset(y)
}

pub fn is_modal(x: &LnPSpace, y: Subset) -> bool {
    x.indices().all(|i| x.preimage(i, y) == y)
}

pub fn is_theta_subset(x: &LnPSpace, y: Subset) -> bool {
    let images = x.union_of_images(y);
    images.is_subset(y) && y.is_subset(closure(images))
}

pub fn classify_subset(x: &LnPSpace, y: Subset) -> SubsetFlags {
    let p = x.poset();
    let components = p.components();
    SubsetFlags {
        increasing: p.is_increasing(y),
        decreasing: p.is_decreasing(y),
        convex: p.is_convex(y),
        semimodal: is_semimodal(x, y),
        modal: is_modal(x, y),
        theta: is_theta_subset(x, y),
        chain_union: components.iter().all(|&c| c.is_subset(y) || c.is_disjoint(y)),
    }
}

/// Every subset of `X` passing `keep`, by scanning `2^|X|` candidates.
pub fn scan_subsets(
    x: &LnPSpace,
    keep: impl Fn(Subset) -> bool,
) -> Result<Vec<Subset>, CongruenceError> {
    if x.len() > SCAN_LIMIT {
        return Err(CongruenceError::TooLarge(x.len()));
    }
    Ok(Subset::all(x.len()).filter(|&y| keep(y)).collect())
}

/// Unions of maximal chains: the modal subsets of a valid space.
pub fn modal_subsets(x: &LnPSpace) -> Result<Vec<Subset>, CongruenceError> {
    let blocks = chain_decomposition(x)?;
    if blocks.len() > SCAN_LIMIT {
        return Err(CongruenceError::TooLarge(blocks.len()));
    }
    let mut out: Vec<Subset> = Subset::all(blocks.len())
        .map(|pick| pick.iter().fold(Subset::EMPTY, |acc, k| acc | blocks[k]))
        .collect();
    out.sort_by_key(|s| (s.len(), s.bits()));
    Ok(out)
}

fn names(x: &LnPSpace, y: Subset) -> String {
    format!("{{{}}}", x.poset().names_of(y).join(","))
}

/// `Theta_S(Y)`: `a ~ b` iff `sigma(a) n Y = sigma(b) n Y`.
pub fn theta_from_subset(dual: &Dual, y: Subset) -> Result<Congruence, CongruenceError> {
    if !is_semimodal(dual.space(), y) {
        return Err(CongruenceError::NotSemimodal(names(dual.space(), y)));
    }
    Ok(congruence_of_subset(dual, y))
}

fn congruence_of_subset(dual: &Dual, y: Subset) -> Congruence {
    Congruence::from_key(dual.algebra().len(), |a| (dual.sigma(a) & y).bits())
}

/// `Theta_OS(G)`: `a ~ b` iff `sigma(a) xor sigma(b)` lies in `G`.
pub fn congruence_from_open(dual: &Dual, g: Subset) -> Result<Congruence, CongruenceError> {
    let x = dual.space();
    if !is_semimodal(x, x.carrier() - g) {
        return Err(CongruenceError::ComplementNotSemimodal(names(x, g)));
    }
    Ok(congruence_of_open(dual, g))
}

fn congruence_of_open(dual: &Dual, g: Subset) -> Congruence {
    Congruence::from_relation(dual.algebra().len(), |a, b| {
        (dual.sigma(a) ^ dual.sigma(b)).is_subset(g)
    })
    .expect("symmetric difference inside a fixed set is an equivalence")
}

/// Union of `sigma(a) xor sigma(b)` over related pairs.
pub fn open_set_of(dual: &Dual, theta: &Congruence) -> Subset {
    (0..theta.len()).fold(Subset::EMPTY, |acc, a| {
        acc | (dual.sigma(a) ^ dual.sigma(theta.class_of(a)))
    })
}

/// The subset `Y` with `theta = Theta_S(Y)`.
pub fn dual_subset_of(dual: &Dual, theta: &Congruence) -> Subset {
    dual.points() - open_set_of(dual, theta)
}

/// Reduces an arbitrary pair to a comparable one.
pub fn ordered_pair(a: &LmAlgebra, x: usize, y: usize) -> (usize, usize) {
    if a.leq(x, y) {
        (x, y)
    } else if a.leq(y, x) {
        (y, x)
    } else {
        (a.meet(x, y), a.join(x, y))
    }
}

/// `sigma(b) \ sigma(a)`.
pub fn difference_set(dual: &Dual, a: usize, b: usize) -> Subset {
    dual.sigma(b) - dual.sigma(a)
}

/// Least `G` containing `r` with `X \ G` semimodal, by scanning subsets when
/// the space is small and by iterating preimages otherwise.
fn least_open_containing(x: &LnPSpace, r: Subset) -> Subset {
    if x.len() <= DEFAULT_MAX_SPACE_SIZE {
        let candidates: Vec<Subset> = Subset::all(x.len())
            .filter(|&g| r.is_subset(g) && is_semimodal(x, x.carrier() - g))
            .collect();
        let least = candidates
            .iter()
            .fold(x.carrier(), |acc, &g| acc & g);
        debug_assert!(candidates.contains(&least));
        least
    } else {
        let mut g = r;
        loop {
            let next = g | x.union_of_preimages(g);
            if next == g {
                return g;
            }
            g = next;
        }
    }
}

/// One closed form of a principal congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub name: &'static str,
    pub congruence: Congruence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalForms {
    pub a: usize,
    pub b: usize,
    pub oracle: Congruence,
    pub forms: Vec<Form>,
}

impl PrincipalForms {
    /// Name of the first form that disagrees with the oracle.
    pub fn mismatch(&self) -> Option<&'static str> {
        self.forms
            .iter()
            .find(|f| f.congruence != self.oracle)
            .map(|f| f.name)
    }
}

/// `/\_i (phi_bar_i b v phi_i a)`.
pub fn filter_generator(a: &LmAlgebra, x: usize, y: usize) -> usize {
    a.lattice().meet_all(a.indices().map(|i| a.join(a.phi_bar(i, y), a.phi(i, x))))
}

/// `\/_i (phi_i b ^ phi_bar_i a)`.
pub fn join_generator(a: &LmAlgebra, x: usize, y: usize) -> usize {
    a.lattice().join_all(a.indices().map(|i| a.meet(a.phi(i, y), a.phi_bar(i, x))))
}

/// Every closed form of the principal LM-congruence of `(a, b)` next to the
/// oracle result. Incomparable pairs are replaced by `(a ^ b, a v b)`.
pub fn principal_forms(dual: &Dual, a: usize, b: usize) -> PrincipalForms {
    let alg = dual.algebra();
    let x = dual.space();
    let (a, b) = ordered_pair(alg, a, b);
    let r = difference_set(dual, a, b);
    let oracle = generate_congruence_oracle(alg, &[(a, b)], Mode::Lm);
    let open = |g| congruence_of_open(dual, g);

    let least = least_open_containing(x, r);
    let set_form = r | x.union_of_preimages(r);
    let sigma_form = alg
        .indices()
        .fold(Subset::EMPTY, |acc, i| acc | dual.sigma(alg.meet(alg.phi(i, b), alg.phi_bar(i, a))));
    let modal_form = x.union_of_preimages(r);
    let join_form = dual.sigma(join_generator(alg, a, b));
    let filter = alg.poset().principal_up(filter_generator(alg, a, b));
    let filter_form = filter_congruence(dual, filter)
        .expect("principal up-set is a filter")
        .congruence;

    PrincipalForms {
        a,
        b,
        oracle,
        forms: vec![
            Form { name: "least-open", congruence: open(least) },
            Form { name: "set", congruence: open(set_form) },
            Form { name: "sigma", congruence: open(sigma_form) },
            Form { name: "modal", congruence: open(modal_form) },
            Form { name: "join", congruence: open(join_form) },
            Form { name: "filter", congruence: filter_form },
        ],
    }
}

/// Every closed form of the principal theta-congruence of `(a, b)` next to
/// the oracle result.
pub fn principal_theta_forms(dual: &Dual, a: usize, b: usize) -> PrincipalForms {
    let alg = dual.algebra();
    let x = dual.space();
    let (a, b) = ordered_pair(alg, a, b);
    let r = difference_set(dual, a, b);
    let oracle = generate_congruence_oracle(alg, &[(a, b)], Mode::Theta);
    let from_y = |y| congruence_of_subset(dual, y);

    // largest theta-subset missing R; theta-subsets are closed under union
    let largest = if x.len() <= DEFAULT_MAX_SPACE_SIZE {
        Subset::all(x.len())
            .filter(|&y| is_theta_subset(x, y) && y.is_disjoint(r))
            .fold(Subset::EMPTY, |acc, y| acc | y)
    } else {
        let mut y = x.carrier() - r;
        loop {
            // drop points whose images leave y, then keep only images
            let next = x.union_of_images(y & x.intersection_of_preimages(y)) & y;
            if next == y {
                break y;
            }
            y = next;
        }
    };
    let set_form = x.union_of_images(x.intersection_of_preimages(x.carrier() - r));
    let sigma_inner = alg.indices().fold(x.carrier(), |acc, i| {
        acc & dual.sigma(alg.join(alg.phi(i, a), alg.phi_bar(i, b)))
    });
    let sigma_form = x.union_of_images(sigma_inner);

    PrincipalForms {
        a,
        b,
        oracle,
        forms: vec![
            Form { name: "greatest-theta-subset", congruence: from_y(largest) },
            Form { name: "set", congruence: from_y(closure(set_form)) },
            Form { name: "sigma", congruence: from_y(closure(sigma_form)) },
        ],
    }
}

/// `Theta(a, b)` after checking every closed form against the oracle.
pub fn principal_congruence(dual: &Dual, a: usize, b: usize) -> Result<Congruence, CongruenceError> {
    checked(dual, principal_forms(dual, a, b))
}

pub fn principal_theta_congruence(
    dual: &Dual,
    a: usize,
    b: usize,
) -> Result<Congruence, CongruenceError> {
    checked(dual, principal_theta_forms(dual, a, b))
}

fn checked(dual: &Dual, forms: PrincipalForms) -> Result<Congruence, CongruenceError> {
    match forms.mismatch() {
        Some(form) => Err(CongruenceError::FormMismatch {
            form,
            a: dual.algebra().name(forms.a).to_owned(),
            b: dual.algebra().name(forms.b).to_owned(),
        }),
        None => Ok(forms.oracle),
    }
}

/// Comparable pairs `a <= b`, lexicographic.
pub fn comparable_pairs(a: &LmAlgebra) -> Vec<(usize, usize)> {
    (0..a.len())
        .flat_map(|x| a.poset().principal_up(x).iter().map(move |y| (x, y)))
        .collect()
}

/// Oracle principal congruence for every comparable pair.
pub fn principal_table(a: &LmAlgebra, mode: Mode) -> Vec<((usize, usize), Congruence)> {
    comparable_pairs(a)
        .into_iter()
        .map(|(x, y)| ((x, y), generate_congruence_oracle(a, &[(x, y)], mode)))
        .collect()
}

/// All congruences as joins of principal ones, computed with the oracle only.
pub fn principal_join_closure(a: &LmAlgebra, mode: Mode) -> Vec<Congruence> {
    let mut set: BTreeSet<Congruence> = principal_table(a, mode).into_iter().map(|(_, c)| c).collect();
    set.insert(Congruence::identity(a.len()));
    loop {
        let current: Vec<Congruence> = set.iter().cloned().collect();
        let mut added = false;
        for (k, p) in current.iter().enumerate() {
            for q in &current[k + 1..] {
                added |= set.insert(p.join(q).expect("same algebra"));
            }
        }
        if !added {
            break;
        }
    }
    set.into_iter().collect()
}

/// A congruence lattice with the dual subset of each member.
#[derive(Clone, Debug)]
pub struct ConLattice {
    mode: Mode,
    congruences: Vec<Congruence>,
    dual_subsets: Vec<Subset>,
    order: Poset,
    scanned: bool,
}

impl ConLattice {
    fn new(dual: &Dual, mode: Mode, mut congruences: Vec<Congruence>, scanned: bool) -> Self {
        congruences.sort_by(|p, q| {
            q.num_classes()
                .cmp(&p.num_classes())
                .then_with(|| p.cmp(q))
        });
        let dual_subsets = congruences.iter().map(|c| dual_subset_of(dual, c)).collect();
        let names = congruences
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if c.is_identity() {
                    "Delta".to_owned()
                } else if c.is_total() {
                    "Nabla".to_owned()
                } else {
                    format!("theta{k}")
                }
            })
            .collect();
        let order = Poset::from_relation(names, |p, q| congruences[p].le(&congruences[q]))
            .expect("inclusion of congruences is a partial order");
        ConLattice {
            mode,
            congruences,
            dual_subsets,
            order,
            scanned,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn get(&self, k: usize) -> &Congruence {
        &self.congruences[k]
    }

    /// `Y` with `Theta_S(Y)` equal to member `k`.
    pub fn dual_subset(&self, k: usize) -> Subset {
        self.dual_subsets[k]
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    /// Whether the subset scan was run, as opposed to principal joins only.
    pub fn scanned(&self) -> bool {
        self.scanned
    }

    pub fn index_of(&self, theta: &Congruence) -> Option<usize> {
        self.congruences.iter().position(|c| c == theta)
    }

    pub fn contains(&self, theta: &Congruence) -> bool {
        self.index_of(theta).is_some()
    }

    /// A complement of member `k` in the lattice, if any.
    pub fn complement(&self, k: usize) -> Option<usize> {
        let theta = &self.congruences[k];
        self.congruences.iter().position(|psi| {
            theta.meet(psi).map(|m| m.is_identity()).unwrap_or(false)
                && theta.join(psi).map(|j| j.is_total()).unwrap_or(false)
        })
    }
}

/// `Con(A)` or `Con_theta(A)`.
///
/// When `|X(A)| <= max_space_size` the subsets of `X(A)` are scanned, mapped
/// through `Theta_S`, and the result is checked to be an order-reversing
/// bijection onto the congruences generated by principal joins. Larger
/// spaces use principal joins only.
pub fn all_congruences(dual: &Dual, mode: Mode, max_space_size: usize) -> Result<ConLattice, CongruenceError> {
    let generated = principal_join_closure(dual.algebra(), mode);
    if dual.space().len() > max_space_size {
        return Ok(ConLattice::new(dual, mode, generated, false));
    }
    let corr = correspondence(dual, mode)?;
    corr.verify(&generated)?;
    Ok(ConLattice::new(dual, mode, generated, true))
}

pub fn all_theta_congruences(dual: &Dual, max_space_size: usize) -> Result<ConLattice, CongruenceError> {
    all_congruences(dual, Mode::Theta, max_space_size)
}

/// Subsets of `X(A)` of the kind matching `mode`, each with `Theta_S(Y)`.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub pairs: Vec<(Subset, Congruence)>,
}

pub fn correspondence(dual: &Dual, mode: Mode) -> Result<Correspondence, CongruenceError> {
    let x = dual.space();
    let subsets = match mode {
        Mode::Lm => scan_subsets(x, |y| is_semimodal(x, y))?,
        Mode::Theta => scan_subsets(x, |y| is_theta_subset(x, y))?,
    };
    let pairs = subsets
        .into_iter()
        .map(|y| theta_from_subset(dual, y).map(|c| (y, c)))
        .collect::<Result<_, _>>()?;
    Ok(Correspondence { pairs })
}

impl Correspondence {
    /// Injective, order-reversing in both directions, and with image equal
    /// to `expected` as a set.
    pub fn verify(&self, expected: &[Congruence]) -> Result<(), CongruenceError> {
        let fail = |s: String| Err(CongruenceError::CorrespondenceFailure(s));
        for (k, (y1, c1)) in self.pairs.iter().enumerate() {
            for (y2, c2) in &self.pairs[k + 1..] {
                if c1 == c2 {
                    return fail(format!("{y1:?} and {y2:?} give the same congruence"));
                }
            }
            for (y2, c2) in &self.pairs {
                if y1.is_subset(*y2) != c2.le(c1) {
                    return fail(format!("order not reversed between {y1:?} and {y2:?}"));
                }
            }
        }
        let image: BTreeSet<&Congruence> = self.pairs.iter().map(|(_, c)| c).collect();
        let target: BTreeSet<&Congruence> = expected.iter().collect();
        if image != target {
            return fail(format!(
                "{} congruences from subsets, {} from principal joins",
                image.len(),
                target.len()
            ));
        }
        Ok(())
    }
}

/// A principal witness for a congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalWitness {
    pub a: usize,
    pub b: usize,
    /// `sigma(b) \ sigma(a)`, convex.
    pub r: Subset,
    /// `R u U_i f_i^{-1}(R)`, the open set of the congruence.
    pub g: Subset,
    pub r_modal: bool,
}

/// Scans comparable pairs for one generating `theta`, preferring a pair
/// whose `R` is modal. Also checks the convex-`R` description of the open
/// set.
pub fn is_principal(
    dual: &Dual,
    theta: &Congruence,
    table: &[((usize, usize), Congruence)],
) -> Option<PrincipalWitness> {
    let x = dual.space();
    let witnesses: Vec<PrincipalWitness> = table
        .iter()
        .filter(|(_, c)| c == theta)
        .map(|&((a, b), _)| {
            let r = difference_set(dual, a, b);
            PrincipalWitness {
                a,
                b,
                r,
                g: r | x.union_of_preimages(r),
                r_modal: is_modal(x, r),
            }
        })
        .filter(|w| x.poset().is_convex(w.r) && w.g == open_set_of(dual, theta))
        .collect();
    witnesses
        .iter()
        .find(|w| w.r_modal)
        .or(witnesses.first())
        .cloned()
}

/// Result of the filter construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterCongruence {
    pub congruence: Congruence,
    /// `n { sigma(a) : a in F }`.
    pub y_f: Subset,
    pub y_f_semimodal: bool,
    pub lm_compatible: bool,
}

/// `Theta(F)`: `x ~ y` iff `x ^ f = y ^ f` for some `f` in `F`.
pub fn filter_congruence(dual: &Dual, filter: Subset) -> Result<FilterCongruence, CongruenceError> {
    let a = dual.algebra();
    if !a.lattice().is_filter(filter) {
        return Err(CongruenceError::NotAFilter(format!(
            "{{{}}}",
            a.poset().names_of(filter).join(",")
        )));
    }
    let congruence = Congruence::from_relation(a.len(), |x, y| {
        filter.iter().any(|f| a.meet(x, f) == a.meet(y, f))
    })
    .expect("filter relation is an equivalence");
    let y_f = filter.iter().fold(dual.points(), |acc, f| acc & dual.sigma(f));
    let lm_compatible = congruence.is_lm_compatible(a);
    Ok(FilterCongruence {
        congruence,
        y_f,
        y_f_semimodal: is_semimodal(dual.space(), y_f),
        lm_compatible,
    })
}

/// Pairs of convex sets satisfying the hypothesis of the non-principality
/// criterion for meets: `T` is a proper subset of `S` with closure
/// containing `S`, where `S = R1 \ (R2 u U f_i^{-1}(R1))` and
/// `T = S n U f_i^{-1}(R2)`. On a finite space this never happens.
pub fn non_principality_witnesses(dual: &Dual) -> Vec<(Subset, Subset)> {
    let x = dual.space();
    let rs: BTreeSet<Subset> = comparable_pairs(dual.algebra())
        .into_iter()
        .map(|(a, b)| difference_set(dual, a, b))
        .collect();
    let mut out = Vec::new();
    for &r1 in &rs {
        for &r2 in &rs {
            let s = r1 - (r2 | x.union_of_preimages(r1));
            let t = s & x.union_of_preimages(r2);
            if t != s && s.is_subset(closure(t)) {
                out.push((r1, r2));
            }
        }
    }
    out
}

/// Proper subsets of `X` whose closure is `X`.
pub fn proper_dense_subsets(x: &LnPSpace) -> Result<Vec<Subset>, CongruenceError> {
    scan_subsets(x, |d| d != x.carrier() && closure(d) == x.carrier())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lm::{make_chain, make_product};

    fn c3() -> LmAlgebra {
        make_chain(3).unwrap()
    }

    fn c3sq() -> LmAlgebra {
        make_product(&c3(), &c3()).unwrap()
    }

    fn first_collapse() -> Congruence {
        Congruence::from_key(9, |p| p % 3)
    }

    fn second_collapse() -> Congruence {
        Congruence::from_key(9, |p| p / 3)
    }

    /// Chain of X(C3 x C3) made of filters determined by the first coordinate.
    fn first_chain(dual: &Dual) -> Subset {
        (0..dual.space().len())
            .filter(|&k| {
                let f = dual.spectrum().filters()[k];
                f.iter().all(|p| f.contains((p / 3) * 3))
            })
            .collect()
    }

    #[test]
    fn partition_basics() {
        let d = Congruence::identity(3);
        let t = Congruence::total(3);
        assert!(d.le(&t) && !t.le(&d));
        assert_eq!(d.meet(&t).unwrap(), d);
        assert_eq!(d.join(&t).unwrap(), t);
        assert_eq!(first_collapse().meet(&second_collapse()).unwrap(), Congruence::identity(9));
        assert_eq!(first_collapse().join(&second_collapse()).unwrap(), Congruence::total(9));
        assert!(matches!(
            d.meet(&Congruence::identity(2)),
            Err(CongruenceError::AlgebraMismatch { .. })
        ));
        assert!(Congruence::from_relation(3, |x, y| x <= y).is_none());
    }

    #[test]
    fn oracle_examples() {
        let a = c3();
        assert!(generate_congruence_oracle(&a, &[(0, 1)], Mode::Lm).is_total());
        assert!(generate_congruence_oracle(&a, &[], Mode::Lm).is_identity());
        let sq = c3sq();
        assert_eq!(generate_congruence_oracle(&sq, &[(0, 3)], Mode::Lm), first_collapse());
    }

    #[test]
    fn classify_examples() {
        let dual = Dual::new(c3());
        let x = dual.space();
        assert!(!classify_subset(x, Subset::singleton(0)).semimodal);
        let all = classify_subset(x, x.carrier());
        assert!(all.increasing && all.decreasing && all.convex && all.semimodal && all.modal && all.theta);

        let dual = Dual::new(c3sq());
        let chain = first_chain(&dual);
        let f = classify_subset(dual.space(), chain);
        assert!(f.semimodal && f.modal && f.theta && f.convex && f.chain_union);
    }

    #[test]
    fn subset_correspondences() {
        let dual = Dual::new(c3());
        assert!(theta_from_subset(&dual, Subset::EMPTY).unwrap().is_total());
        assert!(theta_from_subset(&dual, dual.points()).unwrap().is_identity());
        assert!(matches!(
            theta_from_subset(&dual, Subset::singleton(0)),
            Err(CongruenceError::NotSemimodal(_))
        ));

        let dual = Dual::new(c3sq());
        let chain1 = first_chain(&dual);
        let chain2 = dual.points() - chain1;
        assert_eq!(theta_from_subset(&dual, chain2).unwrap(), first_collapse());
        assert_eq!(congruence_from_open(&dual, chain1).unwrap(), first_collapse());
        assert!(congruence_from_open(&dual, dual.points()).unwrap().is_total());
        assert!(congruence_from_open(&dual, Subset::EMPTY).unwrap().is_identity());
        assert_eq!(dual_subset_of(&dual, &first_collapse()), chain2);
    }

    #[test]
    fn principal_examples() {
        let dual = Dual::new(c3());
        assert!(principal_congruence(&dual, 0, 1).unwrap().is_total());
        assert!(principal_congruence(&dual, 1, 1).unwrap().is_identity());
        assert!(principal_theta_congruence(&dual, 0, 1).unwrap().is_total());
        assert_eq!(filter_generator(dual.algebra(), 0, 1), 0);

        let dual = Dual::new(c3sq());
        assert_eq!(principal_congruence(&dual, 0, 3).unwrap(), first_collapse());
        assert_eq!(principal_theta_congruence(&dual, 0, 3).unwrap(), first_collapse());
        // (0,1) is index 2
        assert_eq!(filter_generator(dual.algebra(), 0, 3), 2);
        // incomparable pair (0,e),(e,0) reduces to ((0,0),(e,e))
        assert_eq!(principal_forms(&dual, 1, 3).a, 0);
        assert_eq!(principal_forms(&dual, 1, 3).b, 4);
    }

    #[test]
    fn all_forms_agree_on_c3_squared() {
        let dual = Dual::new(c3sq());
        for (a, b) in comparable_pairs(dual.algebra()) {
            assert_eq!(principal_forms(&dual, a, b).mismatch(), None);
            assert_eq!(principal_theta_forms(&dual, a, b).mismatch(), None);
        }
    }

    #[test]
    fn congruence_lattices() {
        for n in 2..=4 {
            let dual = Dual::new(make_chain(n).unwrap());
            let con = all_congruences(&dual, Mode::Lm, DEFAULT_MAX_SPACE_SIZE).unwrap();
            assert_eq!(con.len(), 2);
            assert!(con.scanned());
        }
        let dual = Dual::new(c3sq());
        let con = all_congruences(&dual, Mode::Lm, DEFAULT_MAX_SPACE_SIZE).unwrap();
        assert_eq!(con.len(), 4);
        assert!(con.contains(&first_collapse()) && con.contains(&second_collapse()));
        let semimodal = scan_subsets(dual.space(), |y| is_semimodal(dual.space(), y)).unwrap();
        assert_eq!(semimodal.len(), 4);
        let theta = all_theta_congruences(&dual, DEFAULT_MAX_SPACE_SIZE).unwrap();
        assert_eq!(theta.len(), 4);
        let unscanned = all_congruences(&dual, Mode::Lm, 0).unwrap();
        assert!(!unscanned.scanned());
        assert_eq!(unscanned.congruences(), con.congruences());
    }

    #[test]
    fn principal_witnesses() {
        let dual = Dual::new(c3sq());
        let table = principal_table(dual.algebra(), Mode::Lm);
        let w = is_principal(&dual, &first_collapse(), &table).unwrap();
        assert_eq!((w.a, w.b), (0, 6));
        assert_eq!(w.r, first_chain(&dual));
        assert!(w.r_modal);
        let w = is_principal(&dual, &Congruence::identity(9), &table).unwrap();
        assert_eq!((w.a, w.b), (0, 0));
    }

    #[test]
    fn filter_examples() {
        let dual = Dual::new(c3());
        let a = dual.algebra();
        assert!(filter_congruence(&dual, Subset::full(3)).unwrap().congruence.is_total());
        assert!(filter_congruence(&dual, Subset::singleton(2)).unwrap().congruence.is_identity());
        assert!(matches!(
            filter_congruence(&dual, Subset::singleton(1)),
            Err(CongruenceError::NotAFilter(_))
        ));
        // [e) in C3: Y_F = {P2}, not semimodal, and the relation is not an LM-congruence
        let fc = filter_congruence(&dual, a.poset().principal_up(1)).unwrap();
        assert!(!fc.y_f_semimodal && !fc.lm_compatible);

        let dual = Dual::new(c3sq());
        let fc = filter_congruence(&dual, dual.algebra().poset().principal_up(2)).unwrap();
        assert_eq!(fc.congruence, first_collapse());
        assert!(fc.y_f_semimodal && fc.lm_compatible);
    }

    #[test]
    fn vacuity() {
        let dual = Dual::new(c3sq());
        assert!(non_principality_witnesses(&dual).is_empty());
        assert!(proper_dense_subsets(dual.space()).unwrap().is_empty());
    }
}
