//! Finite n-valued Lukasiewicz-Moisil algebras.
//!
//! An LM_n-algebra is a bounded distributive lattice with lattice
//! endomorphisms `phi_1 .. phi_{n-1}` (and their pointwise complements
//! `phi_bar_i`) subject to axioms L1-L5. Indices are 1-based throughout the
//! public API, matching `I = {1, .., n-1}`.

use std::fmt;

use crate::error::LmError;
use crate::lattice::DistLattice;
use crate::poset::Poset;
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// Operation tables have the wrong shape.
    Tables,
    /// Each `phi_i` is a bounded lattice endomorphism.
    L1,
    /// `phi_i x` has a complement `phi_bar_i x`.
    L2,
    /// `phi_i phi_j x = phi_j x`.
    L3,
    /// `i <= j` implies `phi_i x <= phi_j x`.
    L4,
    /// Elements are determined by their `phi` images.
    L5,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Tables => "tables",
            Axiom::L1 => "L1",
            Axiom::L2 => "L2",
            Axiom::L3 => "L3",
            Axiom::L4 => "L4",
            Axiom::L5 => "L5",
        };
        f.write_str(s)
    }
}

/// One violated axiom together with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    /// Operator indices involved (1-based).
    pub indices: Vec<usize>,
    /// Carrier elements involved.
    pub elements: Vec<usize>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn first(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("no violations");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}: {}", v.axiom, v.message)?;
        }
        Ok(())
    }
}

/// Checks L1-L5 for candidate `phi` tables (`phi[i - 1][x] = phi_i x`) over
/// `lattice`. Reports the first witness for each violated axiom and index
/// combination.
pub fn validate_axioms(lattice: &DistLattice, n: usize, phi: &[Vec<usize>]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let m = lattice.len();
    let name = |x: usize| lattice.poset().name(x).to_owned();
    let mut push = |axiom, indices: Vec<usize>, elements: Vec<usize>, message: String| {
        report.violations.push(Violation {
            axiom,
            indices,
            elements,
            message,
        })
    };

    if n < 2 || phi.len() != n - 1 {
        push(
            Axiom::Tables,
            vec![],
            vec![],
            format!("expected {} phi tables, found {}", n.saturating_sub(1), phi.len()),
        );
        return report;
    }
    let mut shape_ok = true;
    for (k, table) in phi.iter().enumerate() {
        if table.len() != m || table.iter().any(|&y| y >= m) {
            shape_ok = false;
            push(
                Axiom::Tables,
                vec![k + 1],
                vec![],
                format!("phi_{} is not a total map on {} elements", k + 1, m),
            );
        }
    }
    if !shape_ok {
        return report;
    }

    // L1
    for (k, p) in phi.iter().enumerate() {
        let i = k + 1;
        if p[lattice.bottom()] != lattice.bottom() || p[lattice.top()] != lattice.top() {
            push(Axiom::L1, vec![i], vec![], format!("phi_{i} does not fix the bounds"));
            continue;
        }
        'pairs: for x in 0..m {
            for y in 0..m {
                if p[lattice.join(x, y)] != lattice.join(p[x], p[y]) {
                    push(
                        Axiom::L1,
                        vec![i],
                        vec![x, y],
                        format!("phi_{i} does not preserve {} v {}", name(x), name(y)),
                    );
                    break 'pairs;
                }
                if p[lattice.meet(x, y)] != lattice.meet(p[x], p[y]) {
                    push(
                        Axiom::L1,
                        vec![i],
                        vec![x, y],
                        format!("phi_{i} does not preserve {} ^ {}", name(x), name(y)),
                    );
                    break 'pairs;
                }
            }
        }
    }

    // L2
    for (k, p) in phi.iter().enumerate() {
        if let Some(x) = (0..m).find(|&x| lattice.complement(p[x]).is_none()) {
            push(
                Axiom::L2,
                vec![k + 1],
                vec![x],
                format!("phi_{} {} = {} has no complement", k + 1, name(x), name(p[x])),
            );
        }
    }

    // L3
    for (ki, pi) in phi.iter().enumerate() {
        for (kj, pj) in phi.iter().enumerate() {
            if let Some(x) = (0..m).find(|&x| pi[pj[x]] != pj[x]) {
                push(
                    Axiom::L3,
                    vec![ki + 1, kj + 1],
                    vec![x],
                    format!("phi_{} phi_{} {} != phi_{} {}", ki + 1, kj + 1, name(x), kj + 1, name(x)),
                );
            }
        }
    }

    // L4
    for ki in 0..phi.len() {
        for kj in ki + 1..phi.len() {
            if let Some(x) = (0..m).find(|&x| !lattice.leq(phi[ki][x], phi[kj][x])) {
                push(
                    Axiom::L4,
                    vec![ki + 1, kj + 1],
                    vec![x],
                    format!("phi_{} {} is not below phi_{} {}", ki + 1, name(x), kj + 1, name(x)),
                );
            }
        }
    }

    // L5
    'outer: for x in 0..m {
        for y in 0..x {
            if phi.iter().all(|p| p[x] == p[y]) {
                push(
                    Axiom::L5,
                    vec![],
                    vec![x, y],
                    format!("{} and {} have equal phi images", name(x), name(y)),
                );
                break 'outer;
            }
        }
    }

    report
}

/// A validated LM_n-algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmAlgebra {
    lattice: DistLattice,
    n: usize,
    phi: Vec<Vec<usize>>,
    phi_bar: Vec<Vec<usize>>,
}

impl LmAlgebra {
    /// Validates `phi` against L1-L5 and derives `phi_bar` as the lattice
    /// complement of each `phi_i x`.
    pub fn try_new(lattice: DistLattice, n: usize, phi: Vec<Vec<usize>>) -> Result<Self, LmError> {
        if n < 2 {
            return Err(LmError::InvalidN(n));
        }
        if lattice.bottom() == lattice.top() {
            return Err(LmError::Degenerate);
        }
        let report = validate_axioms(&lattice, n, &phi);
        if !report.is_empty() {
            return Err(LmError::Axioms(report));
        }
        let phi_bar = phi
            .iter()
            .map(|p| {
                p.iter()
                    .map(|&y| lattice.complement(y).expect("L2 checked"))
                    .collect()
            })
            .collect();
        Ok(LmAlgebra {
            lattice,
            n,
            phi,
            phi_bar,
        })
    }

    pub fn lattice(&self) -> &DistLattice {
        &self.lattice
    }

    pub fn poset(&self) -> &Poset {
        self.lattice.poset()
    }

    /// Number of truth values; the operator indices are `1..n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        1..self.n
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        self.lattice.poset().name(x)
    }

    pub fn bottom(&self) -> usize {
        self.lattice.bottom()
    }

    pub fn top(&self) -> usize {
        self.lattice.top()
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.lattice.join(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.lattice.meet(a, b)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice.leq(a, b)
    }

    /// `phi_i x` for `i` in `1..n`.
    pub fn phi(&self, i: usize, x: usize) -> usize {
        self.phi[i - 1][x]
    }

    /// `phi_bar_i x` for `i` in `1..n`.
    pub fn phi_bar(&self, i: usize, x: usize) -> usize {
        self.phi_bar[i - 1][x]
    }

    pub fn phi_table(&self, i: usize) -> &[usize] {
        &self.phi[i - 1]
    }

    pub fn phi_tables(&self) -> &[Vec<usize>] {
        &self.phi
    }

    /// Re-runs the axiom check; empty for every constructed algebra.
    pub fn validate(&self) -> ValidationReport {
        validate_axioms(&self.lattice, self.n, &self.phi)
    }

    pub fn complement_of(&self, x: usize) -> Option<usize> {
        self.lattice.complement(x)
    }

    /// The Boolean (complemented) elements `C(A)`.
    ///
    /// Four characterisations are evaluated separately for every element:
    /// having a complement, being some `phi_i y`, being fixed by some
    /// `phi_i`, and being fixed by every `phi_i`. Any disagreement is an
    /// error.
    pub fn boolean_elements(&self) -> Result<Subset, LmError> {
        let m = self.len();
        let images: Subset = self
            .phi
            .iter()
            .flat_map(|p| p.iter().copied())
            .collect();
        let mut out = Subset::EMPTY;
        for x in 0..m {
            let complemented = self.complement_of(x).is_some();
            let is_image = images.contains(x);
            let fixed_by_some = self.phi.iter().any(|p| p[x] == x);
            let fixed_by_all = self.phi.iter().all(|p| p[x] == x);
            let verdicts = [complemented, is_image, fixed_by_some, fixed_by_all];
            if verdicts.iter().any(|&v| v != complemented) {
                return Err(LmError::BooleanCharacterisation {
                    element: self.name(x).to_owned(),
                    verdicts,
                });
            }
            if complemented {
                out.insert(x);
            }
        }
        Ok(out)
    }

    /// Checks that `h` (a table from this algebra into `target`) preserves
    /// the bounds, join, meet and every `phi_i`. Returns a description of the
    /// first failure.
    pub fn homomorphism_failure(&self, target: &LmAlgebra, h: &[usize]) -> Option<String> {
        if self.n != target.n {
            return Some(format!("arity {} vs {}", self.n, target.n));
        }
        if h.len() != self.len() || h.iter().any(|&y| y >= target.len()) {
            return Some("map is not total".into());
        }
        if h[self.bottom()] != target.bottom() {
            return Some("bottom not preserved".into());
        }
        if h[self.top()] != target.top() {
            return Some("top not preserved".into());
        }
        for x in 0..self.len() {
            for y in 0..self.len() {
                if h[self.join(x, y)] != target.join(h[x], h[y]) {
                    return Some(format!("join of {} and {}", self.name(x), self.name(y)));
                }
                if h[self.meet(x, y)] != target.meet(h[x], h[y]) {
                    return Some(format!("meet of {} and {}", self.name(x), self.name(y)));
                }
            }
            for i in self.indices() {
                if h[self.phi(i, x)] != target.phi(i, h[x]) {
                    return Some(format!("phi_{i} at {}", self.name(x)));
                }
            }
        }
        None
    }
}

/// The Moisil chain `{0, 1/(n-1), .., 1}` with
/// `phi_i (j/(n-1)) = 1` iff `i + j >= n`.
pub fn make_chain(n: usize) -> Result<LmAlgebra, LmError> {
    if n < 2 {
        return Err(LmError::InvalidN(n));
    }
    make_subchain(n, &(0..n).collect::<Vec<_>>())
}

/// The subalgebra of the n-element chain on the given levels (a subset of
/// `0..n` containing `0` and `n - 1`). Any such subset is closed under the
/// operations since every `phi_i` lands in `{0, 1}`.
pub fn make_subchain(n: usize, levels: &[usize]) -> Result<LmAlgebra, LmError> {
    if n < 2 {
        return Err(LmError::InvalidN(n));
    }
    let mut levels = levels.to_vec();
    levels.sort_unstable();
    levels.dedup();
    if levels.first() != Some(&0) || levels.last() != Some(&(n - 1)) {
        return Err(LmError::InvalidLevels { n, levels });
    }
    let d = n - 1;
    let names: Vec<String> = levels
        .iter()
        .map(|&j| match j {
            0 => "0".to_owned(),
            j if j == d => "1".to_owned(),
            j => format!("{j}/{d}"),
        })
        .collect();
    let k = levels.len();
    let poset = Poset::from_relation(names, |a, b| a <= b)?;
    let lattice = DistLattice::from_poset(poset)?;
    let phi = (1..n)
        .map(|i| {
            levels
                .iter()
                .map(|&j| if i + j >= n { k - 1 } else { 0 })
                .collect()
        })
        .collect();
    LmAlgebra::try_new(lattice, n, phi)
}

/// Componentwise product; element `(x, y)` has index `x * |B| + y`.
pub fn make_product(a: &LmAlgebra, b: &LmAlgebra) -> Result<LmAlgebra, LmError> {
    if a.n != b.n {
        return Err(LmError::ArityMismatch {
            left: a.n,
            right: b.n,
        });
    }
    let (ma, mb) = (a.len(), b.len());
    let size = ma * mb;
    if size > crate::subset::MAX_CARRIER {
        return Err(LmError::TooLarge(size));
    }
    let names = (0..ma)
        .flat_map(|x| (0..mb).map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", a.name(x), b.name(y)))
        .collect();
    let poset = Poset::from_relation(names, |p, q| {
        a.leq(p / mb, q / mb) && b.leq(p % mb, q % mb)
    })?;
    let lattice = DistLattice::from_poset(poset)?;
    let phi = (1..a.n)
        .map(|i| {
            (0..size)
                .map(|p| a.phi(i, p / mb) * mb + b.phi(i, p % mb))
                .collect()
        })
        .collect();
    LmAlgebra::try_new(lattice, a.n, phi)
}

/// Left-nested product of the given factors.
pub fn make_power(a: &LmAlgebra, k: usize) -> Result<LmAlgebra, LmError> {
    if k == 0 {
        return Err(LmError::EmptyProduct);
    }
    let mut acc = a.clone();
    for _ in 1..k {
        acc = make_product(&acc, a)?;
    }
    Ok(acc)
}

/// The ideal `(c]` of a Boolean element `c`, with `phi_i` restricted.
/// Returns the algebra and the original index of each of its elements;
/// `x -> x ^ c` is then a surjective homomorphism onto it.
pub fn make_ideal(a: &LmAlgebra, c: usize) -> Result<(LmAlgebra, Vec<usize>), LmError> {
    if !a.boolean_elements()?.contains(c) {
        return Err(LmError::NotBoolean(a.name(c).to_owned()));
    }
    let members: Vec<usize> = a.poset().principal_down(c).iter().collect();
    let pos = |x: usize| members.binary_search(&x).expect("phi keeps the ideal");
    let names = members.iter().map(|&x| a.name(x).to_owned()).collect();
    let poset = Poset::from_relation(names, |p, q| a.leq(members[p], members[q]))?;
    let lattice = DistLattice::from_poset(poset)?;
    let phi = a
        .indices()
        .map(|i| members.iter().map(|&x| pos(a.phi(i, x))).collect())
        .collect();
    Ok((LmAlgebra::try_new(lattice, a.n, phi)?, members))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3_lattice() -> DistLattice {
        DistLattice::from_poset(
            Poset::build(&["0", "e", "1"], &[("0", "e"), ("e", "1")]).unwrap(),
        )
        .unwrap()
    }

    fn set(xs: &[usize]) -> Subset {
        xs.iter().copied().collect()
    }

    #[test]
    fn chain_three_tables() {
        let c3 = make_chain(3).unwrap();
        assert_eq!(c3.phi_table(1), &[0, 0, 2]);
        assert_eq!(c3.phi_table(2), &[0, 2, 2]);
        assert_eq!(c3.phi_bar(1, 1), 2);
        assert_eq!(c3.phi_bar(2, 1), 0);
        assert!(c3.validate().is_empty());
    }

    #[test]
    fn chain_two_is_boolean() {
        let c2 = make_chain(2).unwrap();
        assert_eq!(c2.phi_table(1), &[0, 1]);
        assert_eq!(c2.boolean_elements().unwrap(), set(&[0, 1]));
    }

    #[test]
    fn chain_four_phi_two() {
        let c4 = make_chain(4).unwrap();
        assert_eq!(c4.phi_table(2), &[0, 0, 3, 3]);
        assert_eq!(c4.name(1), "1/3");
    }

    #[test]
    fn invalid_n() {
        assert!(matches!(make_chain(1), Err(LmError::InvalidN(1))));
        assert!(matches!(make_chain(0), Err(LmError::InvalidN(0))));
    }

    #[test]
    fn swapped_tables_violate_l4_at_e() {
        let report = validate_axioms(&c3_lattice(), 3, &[vec![0, 2, 2], vec![0, 0, 2]]);
        let v = report.first(Axiom::L4).expect("L4 violation");
        assert_eq!(v.elements, vec![1]);
        assert_eq!(v.indices, vec![1, 2]);
        assert!(!report.violates(Axiom::L1));
        assert!(!report.violates(Axiom::L5));
    }

    #[test]
    fn duplicated_table_violates_l5_at_e_zero() {
        let report = validate_axioms(&c3_lattice(), 3, &[vec![0, 0, 2], vec![0, 0, 2]]);
        let v = report.first(Axiom::L5).expect("L5 violation");
        assert_eq!(v.elements, vec![1, 0]);
        assert_eq!(report.violations.len(), 1);
    }

    #[test]
    fn other_axiom_failures_are_witnessed() {
        let l = c3_lattice();
        // phi_1 moves the bottom
        assert!(validate_axioms(&l, 3, &[vec![1, 1, 2], vec![0, 2, 2]]).violates(Axiom::L1));
        // phi_1 = identity: e has no complement
        assert!(validate_axioms(&l, 3, &[vec![0, 1, 2], vec![0, 2, 2]]).violates(Axiom::L2));
        // wrong number of tables
        assert!(validate_axioms(&l, 3, &[vec![0, 0, 2]]).violates(Axiom::Tables));
        assert!(validate_axioms(&l, 3, &[vec![0, 0, 9], vec![0, 2, 2]]).violates(Axiom::Tables));
    }

    #[test]
    fn l3_violation_detected() {
        // Boolean square {0,a,b,1}; phi_1 swaps a and b, which is a lattice
        // automorphism but not idempotent.
        let l = DistLattice::from_poset(
            Poset::build(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
                .unwrap(),
        )
        .unwrap();
        let r = validate_axioms(&l, 2, &[vec![0, 2, 1, 3]]);
        assert!(r.violates(Axiom::L3));
    }

    #[test]
    fn try_new_rejects_bad_input() {
        let err = LmAlgebra::try_new(c3_lattice(), 3, vec![vec![0, 2, 2], vec![0, 0, 2]]);
        assert!(matches!(err, Err(LmError::Axioms(r)) if r.violates(Axiom::L4)));
        let point = DistLattice::from_poset(Poset::build::<&str>(&["*"], &[]).unwrap()).unwrap();
        assert!(matches!(
            LmAlgebra::try_new(point, 2, vec![vec![0]]),
            Err(LmError::Degenerate)
        ));
    }

    #[test]
    fn boolean_elements_examples() {
        let c3 = make_chain(3).unwrap();
        assert_eq!(c3.boolean_elements().unwrap(), set(&[0, 2]));
        let sq = make_product(&c3, &c3).unwrap();
        // (0,0)=0, (0,1)=2, (1,0)=6, (1,1)=8
        assert_eq!(sq.boolean_elements().unwrap(), set(&[0, 2, 6, 8]));
    }

    #[test]
    fn complements() {
        let c3 = make_chain(3).unwrap();
        assert_eq!(c3.complement_of(1), None);
        assert_eq!(c3.complement_of(0), Some(2));
        let sq = make_product(&c3, &c3).unwrap();
        assert_eq!(sq.name(6), "(1,0)");
        assert_eq!(sq.complement_of(6), Some(2));
    }

    #[test]
    fn products() {
        let c3 = make_chain(3).unwrap();
        let sq = make_product(&c3, &c3).unwrap();
        assert_eq!(sq.len(), 9);
        assert!(sq.validate().is_empty());
        let c2 = make_chain(2).unwrap();
        let b4 = make_product(&c2, &c2).unwrap();
        assert_eq!(b4.len(), 4);
        assert_eq!(b4.boolean_elements().unwrap().len(), 4);
        assert!(matches!(
            make_product(&c2, &c3),
            Err(LmError::ArityMismatch { left: 2, right: 3 })
        ));
        assert_eq!(make_power(&c2, 3).unwrap().len(), 8);
        assert!(matches!(make_power(&c2, 0), Err(LmError::EmptyProduct)));
    }

    #[test]
    fn subchains() {
        let c = make_subchain(5, &[0, 2, 4]).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.name(1), "2/4");
        // phi_i(2/4) = 1 iff i >= 3
        assert_eq!(
            (1..5).map(|i| c.phi(i, 1)).collect::<Vec<_>>(),
            vec![0, 0, 2, 2]
        );
        assert!(matches!(
            make_subchain(4, &[1, 3]),
            Err(LmError::InvalidLevels { .. })
        ));
    }

    #[test]
    fn homomorphism_check() {
        let c3 = make_chain(3).unwrap();
        assert!(c3.homomorphism_failure(&c3, &[0, 1, 2]).is_none());
        let why = c3.homomorphism_failure(&c3, &[0, 0, 2]).unwrap();
        assert!(why.contains("phi_2"), "{why}");
    }

    #[test]
    fn ideals() {
        let c3 = make_chain(3).unwrap();
        let sq = make_product(&c3, &c3).unwrap();
        let (ideal, members) = make_ideal(&sq, 2).unwrap();
        assert_eq!(members, vec![0, 1, 2]);
        assert_eq!(ideal.phi_tables(), c3.phi_tables());
        let h: Vec<usize> = (0..9).map(|x| members.binary_search(&sq.meet(x, 2)).unwrap()).collect();
        assert!(sq.homomorphism_failure(&ideal, &h).is_none());
        assert!(matches!(make_ideal(&sq, 4), Err(LmError::NotBoolean(_))));
        assert!(matches!(make_ideal(&sq, 0), Err(LmError::Degenerate)));
    }
}
