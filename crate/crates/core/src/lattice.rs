//! Bounded distributive lattices given by their order, and their prime
//! filters.

use crate::error::LatticeError;
use crate::poset::Poset;
use crate::subset::Subset;

/// A finite bounded distributive lattice.
///
/// Join and meet are always derived from the order; there is no way to
/// supply operation tables directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistLattice {
    poset: Poset,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl DistLattice {
    /// Derives the join and meet tables of `poset`, failing if some pair has
    /// no supremum or infimum or if distributivity fails.
    pub fn from_poset(poset: Poset) -> Result<Self, LatticeError> {
        let m = poset.len();
        if m == 0 {
            return Err(LatticeError::Empty);
        }
        let mut join = vec![0; m * m];
        let mut meet = vec![0; m * m];
        for a in 0..m {
            for b in a..m {
                let upper = poset.principal_up(a) & poset.principal_up(b);
                let least = poset.minimal(upper);
                if least.len() != 1 {
                    return Err(LatticeError::NoSupremum {
                        a: poset.name(a).to_owned(),
                        b: poset.name(b).to_owned(),
                    });
                }
                let lower = poset.principal_down(a) & poset.principal_down(b);
                let greatest = poset.maximal(lower);
                if greatest.len() != 1 {
                    return Err(LatticeError::NoInfimum {
                        a: poset.name(a).to_owned(),
                        b: poset.name(b).to_owned(),
                    });
                }
                let (j, k) = (least.first().unwrap(), greatest.first().unwrap());
                join[a * m + b] = j;
                join[b * m + a] = j;
                meet[a * m + b] = k;
                meet[b * m + a] = k;
            }
        }
        let carrier = poset.carrier();
        let bottom = poset.minimal(carrier).first().unwrap();
        let top = poset.maximal(carrier).first().unwrap();
        let lattice = DistLattice {
            poset,
            join,
            meet,
            bottom,
            top,
        };
        if let Some((a, b, c)) = lattice.distributivity_failure() {
            return Err(LatticeError::NotDistributive {
                a: lattice.poset.name(a).to_owned(),
                b: lattice.poset.name(b).to_owned(),
                c: lattice.poset.name(c).to_owned(),
            });
        }
        Ok(lattice)
    }

    /// First triple violating either distributive law.
    fn distributivity_failure(&self) -> Option<(usize, usize, usize)> {
        let m = self.len();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let meet_over_join = self.meet(a, self.join(b, c))
                        == self.join(self.meet(a, b), self.meet(a, c));
                    let join_over_meet = self.join(a, self.meet(b, c))
                        == self.meet(self.join(a, b), self.join(a, c));
                    if !meet_over_join || !join_over_meet {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// The unique complement of `x`, if it has one.
    pub fn complement(&self, x: usize) -> Option<usize> {
        (0..self.len())
            .find(|&y| self.join(x, y) == self.top && self.meet(x, y) == self.bottom)
    }

    /// Nonempty, upward closed and closed under meets.
    pub fn is_filter(&self, f: Subset) -> bool {
        !f.is_empty()
            && self.poset.is_increasing(f)
            && f.iter().all(|a| f.iter().all(|b| f.contains(self.meet(a, b))))
    }

    /// A proper filter `F` with `a v b in F` implying `a in F` or `b in F`.
    pub fn is_prime_filter(&self, f: Subset) -> bool {
        if !self.is_filter(f) || f.contains(self.bottom) {
            return false;
        }
        (0..self.len()).all(|a| {
            (0..self.len()).all(|b| !f.contains(self.join(a, b)) || f.contains(a) || f.contains(b))
        })
    }

    /// `[a)`.
    pub fn principal_filter(&self, a: usize) -> Subset {
        self.poset.principal_up(a)
    }

    /// The prime filters, ordered by inclusion.
    ///
    /// Every filter of a finite lattice is principal, so the candidates are
    /// the up-sets `[a)`; each is then tested against the filter and
    /// primality definitions.
    pub fn prime_filters(&self) -> PrimeSpectrum {
        let mut filters: Vec<Subset> = (0..self.len())
            .map(|a| self.principal_filter(a))
            .filter(|&f| self.is_prime_filter(f))
            .collect();
        filters.sort_by_key(|f| (f.len(), f.bits()));
        PrimeSpectrum::new(filters)
    }
}

/// The prime filters of a lattice as a poset under inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSpectrum {
    filters: Vec<Subset>,
    order: Poset,
}

impl PrimeSpectrum {
    fn new(filters: Vec<Subset>) -> Self {
        let names = (1..=filters.len()).map(|k| format!("P{k}")).collect();
        let order = Poset::from_relation(names, |p, q| filters[p].is_subset(filters[q]))
            .expect("inclusion is a partial order");
        PrimeSpectrum { filters, order }
    }

    pub fn filters(&self) -> &[Subset] {
        &self.filters
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    /// Position of a prime filter given by its members.
    pub fn position(&self, members: Subset) -> Option<usize> {
        self.filters.iter().position(|&f| f == members)
    }

    /// `sigma(a) = {P : a in P}`.
    pub fn sigma(&self, a: usize) -> Subset {
        self.filters
            .iter()
            .enumerate()
            .filter(|(_, f)| f.contains(a))
            .map(|(k, _)| k)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(elements: &[&str], pairs: &[(&str, &str)]) -> Result<DistLattice, LatticeError> {
        DistLattice::from_poset(Poset::build(elements, pairs).unwrap())
    }

    fn chain3() -> DistLattice {
        lattice(&["0", "e", "1"], &[("0", "e"), ("e", "1")]).unwrap()
    }

    fn diamond() -> DistLattice {
        lattice(
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
        .unwrap()
    }

    fn set(xs: &[usize]) -> Subset {
        xs.iter().copied().collect()
    }

    /// Prime filters by scanning every up-set of the lattice.
    fn prime_filters_by_upset_scan(l: &DistLattice) -> Vec<Subset> {
        let mut v: Vec<Subset> = l
            .poset()
            .increasing_sets()
            .into_iter()
            .filter(|&s| l.is_prime_filter(s))
            .collect();
        v.sort_by_key(|f| (f.len(), f.bits()));
        v
    }

    #[test]
    fn chain_tables() {
        let l = chain3();
        assert_eq!((l.bottom(), l.top()), (0, 2));
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(l.join(a, b), a.max(b));
                assert_eq!(l.meet(a, b), a.min(b));
            }
        }
    }

    #[test]
    fn diamond_is_distributive() {
        let l = diamond();
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.complement(1), Some(2));
    }

    #[test]
    fn m3_is_not_distributive() {
        let err = lattice(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::NotDistributive { .. }));
    }

    #[test]
    fn n5_is_not_distributive() {
        let err = lattice(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::NotDistributive { .. }));
    }

    #[test]
    fn missing_bounds_is_not_a_lattice() {
        let err = lattice(&["a", "b"], &[]).unwrap_err();
        assert!(matches!(err, LatticeError::NoSupremum { .. }));
        let err = lattice(&["a", "b", "t"], &[("a", "t"), ("b", "t")]).unwrap_err();
        assert!(matches!(err, LatticeError::NoInfimum { .. }));
        assert!(matches!(lattice(&[], &[]), Err(LatticeError::Empty)));
    }

    #[test]
    fn prime_filters_of_small_lattices() {
        let two = lattice(&["0", "1"], &[("0", "1")]).unwrap();
        assert_eq!(two.prime_filters().filters(), &[set(&[1])]);

        let c3 = chain3().prime_filters();
        assert_eq!(c3.filters(), &[set(&[2]), set(&[1, 2])]);
        assert!(c3.order().lt(0, 1));

        let d = diamond().prime_filters();
        assert_eq!(d.filters(), &[set(&[1, 3]), set(&[2, 3])]);
        assert!(!d.order().comparable(0, 1));
    }

    #[test]
    fn prime_filters_match_upset_scan() {
        for l in [chain3(), diamond()] {
            assert_eq!(l.prime_filters().filters(), prime_filters_by_upset_scan(&l));
        }
    }

    #[test]
    fn sigma_examples() {
        let l = chain3();
        let spec = l.prime_filters();
        assert_eq!(spec.sigma(1), set(&[1]));
        assert_eq!(spec.sigma(l.top()), set(&[0, 1]));
        assert_eq!(spec.sigma(l.bottom()), Subset::EMPTY);
    }

    #[test]
    fn filter_predicates() {
        let l = diamond();
        assert!(l.is_filter(l.poset().carrier()));
        assert!(!l.is_prime_filter(l.poset().carrier()));
        assert!(l.is_filter(set(&[3])));
        // [top) is a filter but top = a v b with neither a nor b in it
        assert!(!l.is_prime_filter(set(&[3])));
        assert!(!l.is_filter(set(&[1, 2, 3])));
        assert!(!l.is_filter(Subset::EMPTY));
    }
}
