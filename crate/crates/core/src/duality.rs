//! Dual spaces of LM_n-algebras and the algebras of their increasing sets.
//!
//! A finite dual space is a poset `X` with maps `f_1 .. f_{n-1}`. With the
//! discrete topology every subset is clopen, so continuity is automatic and
//! density of a subset means equality.

use std::collections::HashMap;
use std::fmt;

use crate::error::DualityError;
use crate::lattice::{DistLattice, PrimeSpectrum};
use crate::lm::LmAlgebra;
use crate::poset::Poset;
use crate::subset::{Subset, MAX_CARRIER};

/// A finite poset with self-maps `f_1 .. f_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LnPSpace {
    poset: Poset,
    n: usize,
    maps: Vec<Vec<usize>>,
}

impl LnPSpace {
    /// Checks only that there are `n - 1` total maps; use
    /// [`validate_space`] for the axioms.
    pub fn new(poset: Poset, n: usize, maps: Vec<Vec<usize>>) -> Result<Self, DualityError> {
        let len = poset.len();
        if n < 2 || maps.len() != n - 1 {
            return Err(DualityError::MapShape(format!(
                "expected {} maps, found {}",
                n.saturating_sub(1),
                maps.len()
            )));
        }
        for (k, f) in maps.iter().enumerate() {
            if f.len() != len || f.iter().any(|&y| y >= len) {
                return Err(DualityError::MapShape(format!(
                    "f_{} is not a total map on {len} points",
                    k + 1
                )));
            }
        }
        Ok(LnPSpace { poset, n, maps })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn carrier(&self) -> Subset {
        self.poset.carrier()
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        1..self.n
    }

    /// `f_i(x)` for `i` in `1..n`.
    pub fn f(&self, i: usize, x: usize) -> usize {
        self.maps[i - 1][x]
    }

    pub fn map(&self, i: usize) -> &[usize] {
        &self.maps[i - 1]
    }

    pub fn image(&self, i: usize, y: Subset) -> Subset {
        y.image(self.map(i))
    }

    pub fn preimage(&self, i: usize, y: Subset) -> Subset {
        y.preimage(self.map(i))
    }

    /// `U_i f_i(Y)`.
    pub fn union_of_images(&self, y: Subset) -> Subset {
        self.indices().fold(Subset::EMPTY, |acc, i| acc | self.image(i, y))
    }

    /// `U_i f_i^{-1}(Y)`.
    pub fn union_of_preimages(&self, y: Subset) -> Subset {
        self.indices().fold(Subset::EMPTY, |acc, i| acc | self.preimage(i, y))
    }

    /// `n_i f_i^{-1}(Y)`.
    pub fn intersection_of_preimages(&self, y: Subset) -> Subset {
        self.indices()
            .fold(self.carrier(), |acc, i| acc & self.preimage(i, y))
    }

    /// `{f_i(x) : i in I}`.
    pub fn orbit(&self, x: usize) -> Subset {
        self.indices().map(|i| self.f(i, x)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceAxiom {
    /// `x <= y` implies `f_i(x) = f_i(y)`.
    LP3,
    /// `i <= j` implies `f_i(x) <= f_j(x)`.
    LP4,
    /// `f_i . f_j = f_i`.
    LP5,
    /// `X` is the union of the images of the `f_i`.
    LnP6,
    /// Subsets are determined by their preimages.
    LnP7,
    /// Every point is fixed by some `f_i`.
    LnP8,
    /// `x` and `f_i(x)` are comparable.
    LP8,
    /// `f_1(x)` is the unique minimal point below `x`.
    LP9,
    /// `f_{n-1}(x)` is the unique maximal point above `x`.
    LP10,
    /// The three surjectivity conditions disagree.
    Equivalence,
}

impl fmt::Display for SpaceAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpaceAxiom::LP3 => "lP3",
            SpaceAxiom::LP4 => "lP4",
            SpaceAxiom::LP5 => "lP5",
            SpaceAxiom::LnP6 => "lnP6",
            SpaceAxiom::LnP7 => "lnP7",
            SpaceAxiom::LnP8 => "lnP8",
            SpaceAxiom::LP8 => "lP8",
            SpaceAxiom::LP9 => "lP9",
            SpaceAxiom::LP10 => "lP10",
            SpaceAxiom::Equivalence => "lnP6-8 equivalence",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceViolation {
    pub axiom: SpaceAxiom,
    pub indices: Vec<usize>,
    pub points: Vec<usize>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceReport {
    pub violations: Vec<SpaceViolation>,
    /// Independent verdicts for the three surjectivity conditions.
    pub lnp6: bool,
    pub lnp7: bool,
    pub lnp8: bool,
}

impl SpaceReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: SpaceAxiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn first(&self, axiom: SpaceAxiom) -> Option<&SpaceViolation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    pub fn equivalence_holds(&self) -> bool {
        self.lnp6 == self.lnp7 && self.lnp7 == self.lnp8
    }
}

impl fmt::Display for SpaceReport {
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

/// Exhaustive lnP7 scan is used up to this many points.
const LNP7_BRUTE_FORCE_LIMIT: usize = 16;

/// Checks lP3-lP5, lP8-lP10 and evaluates lnP6, lnP7 and lnP8 separately,
/// reporting a violation if those three disagree.
pub fn validate_space(x: &LnPSpace) -> SpaceReport {
    let p = x.poset();
    let len = x.len();
    let top_index = x.n - 1;
    let name = |a: usize| p.name(a).to_owned();
    let mut violations = Vec::new();
    let mut push = |axiom, indices: Vec<usize>, points: Vec<usize>, message: String| {
        violations.push(SpaceViolation {
            axiom,
            indices,
            points,
            message,
        })
    };

    for i in x.indices() {
        let lp3 = (0..len)
            .flat_map(|a| p.principal_up(a).iter().map(move |b| (a, b)))
            .find(|&(a, b)| x.f(i, a) != x.f(i, b));
        if let Some((a, b)) = lp3 {
            push(
                SpaceAxiom::LP3,
                vec![i],
                vec![a, b],
                format!("{} <= {} but f_{i} differs", name(a), name(b)),
            );
        }
    }

    for i in x.indices() {
        for j in i + 1..x.n {
            if let Some(a) = (0..len).find(|&a| !p.leq(x.f(i, a), x.f(j, a))) {
                push(
                    SpaceAxiom::LP4,
                    vec![i, j],
                    vec![a],
                    format!("f_{i}({}) is not below f_{j}({})", name(a), name(a)),
                );
            }
        }
    }

    for i in x.indices() {
        for j in x.indices() {
            if let Some(a) = (0..len).find(|&a| x.f(i, x.f(j, a)) != x.f(i, a)) {
                push(
                    SpaceAxiom::LP5,
                    vec![i, j],
                    vec![a],
                    format!("f_{i} f_{j} ({}) != f_{i}({})", name(a), name(a)),
                );
            }
        }
    }

    // lnP6: X is the union of the images.
    let images = x.union_of_images(x.carrier());
    let lnp6 = images == x.carrier();
    if let Some(a) = (x.carrier() - images).first() {
        push(
            SpaceAxiom::LnP6,
            vec![],
            vec![a],
            format!("{} is not in the image of any f_i", name(a)),
        );
    }

    // lnP7: Y -> (f_i^{-1}(Y))_i is injective on all subsets.
    let lnp7_witness = lnp7_failure(x);
    let lnp7 = lnp7_witness.is_none();
    if let Some((y, z)) = lnp7_witness {
        push(
            SpaceAxiom::LnP7,
            vec![],
            (y ^ z).iter().collect(),
            format!(
                "{:?} and {:?} have equal preimages",
                p.names_of(y),
                p.names_of(z)
            ),
        );
    }

    // lnP8: every point is a fixed point of some f_i.
    let lnp8_witness = (0..len).find(|&a| x.indices().all(|i| x.f(i, a) != a));
    let lnp8 = lnp8_witness.is_none();
    if let Some(a) = lnp8_witness {
        push(
            SpaceAxiom::LnP8,
            vec![],
            vec![a],
            format!("{} is fixed by no f_i", name(a)),
        );
    }

    if !(lnp6 == lnp7 && lnp7 == lnp8) {
        push(
            SpaceAxiom::Equivalence,
            vec![],
            vec![],
            format!("lnP6={lnp6} lnP7={lnp7} lnP8={lnp8}"),
        );
    }

    for i in x.indices() {
        if let Some(a) = (0..len).find(|&a| !p.comparable(a, x.f(i, a))) {
            push(
                SpaceAxiom::LP8,
                vec![i],
                vec![a],
                format!("{} and f_{i}({}) are incomparable", name(a), name(a)),
            );
        }
    }

    let lp9 = (0..len).find(|&a| {
        let below_min = p.minimal(p.principal_down(a));
        below_min != Subset::singleton(x.f(1, a))
    });
    if let Some(a) = lp9 {
        push(
            SpaceAxiom::LP9,
            vec![1],
            vec![a],
            format!("f_1({}) is not the unique minimal point below it", name(a)),
        );
    }

    let lp10 = (0..len).find(|&a| {
        let above_max = p.maximal(p.principal_up(a));
        above_max != Subset::singleton(x.f(top_index, a))
    });
    if let Some(a) = lp10 {
        push(
            SpaceAxiom::LP10,
            vec![top_index],
            vec![a],
            format!(
                "f_{top_index}({}) is not the unique maximal point above it",
                name(a)
            ),
        );
    }

    SpaceReport {
        violations,
        lnp6,
        lnp7,
        lnp8,
    }
}

/// Two distinct subsets with identical preimages under every `f_i`.
fn lnp7_failure(x: &LnPSpace) -> Option<(Subset, Subset)> {
    if x.len() <= LNP7_BRUTE_FORCE_LIMIT {
        let mut seen: HashMap<Vec<Subset>, Subset> = HashMap::new();
        for y in Subset::all(x.len()) {
            let key: Vec<Subset> = x.indices().map(|i| x.preimage(i, y)).collect();
            if let Some(&z) = seen.get(&key) {
                return Some((z, y));
            }
            seen.insert(key, y);
        }
        None
    } else {
        // Preimage commutes with symmetric difference, so the map is
        // injective iff no nonempty set has all preimages empty, iff no
        // singleton does.
        (0..x.len())
            .find(|&a| {
                x.indices()
                    .all(|i| x.preimage(i, Subset::singleton(a)).is_empty())
            })
            .map(|a| (Subset::EMPTY, Subset::singleton(a)))
    }
}

/// lP7: increasing `U`, `V` with equal preimages under every `f_i` are
/// equal. Returns a counterexample if one exists.
pub fn lp7_failure(x: &LnPSpace) -> Option<(Subset, Subset)> {
    let ups = x.poset().increasing_sets();
    let mut seen: HashMap<Vec<Subset>, Subset> = HashMap::new();
    for u in ups {
        let key: Vec<Subset> = x.indices().map(|i| x.preimage(i, u)).collect();
        if let Some(&v) = seen.get(&key) {
            return Some((v, u));
        }
        seen.insert(key, u);
    }
    None
}

/// lP11 in finite form: the segments `[f_1(x), f_{n-1}(x)]` partition `X`
/// and no two distinct segments have comparable points.
pub fn is_sum_of_segments(x: &LnPSpace) -> bool {
    let p = x.poset();
    let mut segments: Vec<Subset> = (0..x.len())
        .map(|a| {
            let lo = x.f(1, a);
            let hi = x.f(x.n - 1, a);
            p.principal_up(lo) & p.principal_down(hi)
        })
        .collect();
    segments.sort();
    segments.dedup();
    let mut covered = Subset::EMPTY;
    for (k, &s) in segments.iter().enumerate() {
        if !covered.is_disjoint(s) {
            return false;
        }
        covered |= s;
        for &t in &segments[k + 1..] {
            if s.iter().any(|a| t.iter().any(|b| p.comparable(a, b))) {
                return false;
            }
        }
    }
    covered == x.carrier()
}

/// Partitions a valid space into its maximal chains `{f_i(x) : i in I}`,
/// ordered by least member.
pub fn chain_decomposition(x: &LnPSpace) -> Result<Vec<Subset>, DualityError> {
    let p = x.poset();
    let mut blocks: Vec<Subset> = Vec::new();
    let mut covered = Subset::EMPTY;
    for a in 0..x.len() {
        if covered.contains(a) {
            continue;
        }
        let chain = x.orbit(a);
        if !chain.contains(a) || !covered.is_disjoint(chain) || !p.is_chain(chain) {
            return Err(DualityError::NotAChainSum(p.name(a).to_owned()));
        }
        // maximal: nothing outside is comparable to a member
        let reach = p.up_set(chain) | p.down_set(chain);
        if reach != chain {
            return Err(DualityError::NotAChainSum(p.name(a).to_owned()));
        }
        covered |= chain;
        blocks.push(chain);
    }
    Ok(blocks)
}

/// An algebra together with its dual space and the map `sigma`.
#[derive(Clone, Debug)]
pub struct Dual {
    algebra: LmAlgebra,
    spectrum: PrimeSpectrum,
    space: LnPSpace,
    sigma: Vec<Subset>,
}

impl Dual {
    /// Prime filters ordered by inclusion, with
    /// `f_i(P) = phi_i^{-1}(P)`.
    pub fn new(algebra: LmAlgebra) -> Self {
        let spectrum = algebra.lattice().prime_filters();
        let maps = algebra
            .indices()
            .map(|i| {
                spectrum
                    .filters()
                    .iter()
                    .map(|&filter| {
                        let pre = filter.preimage(algebra.phi_table(i));
                        spectrum
                            .position(pre)
                            .expect("preimage of a prime filter under a lattice endomorphism is prime")
                    })
                    .collect()
            })
            .collect();
        let space = LnPSpace::new(spectrum.order().clone(), algebra.n(), maps)
            .expect("one map per index");
        let sigma = (0..algebra.len()).map(|a| spectrum.sigma(a)).collect();
        Dual {
            algebra,
            spectrum,
            space,
            sigma,
        }
    }

    pub fn algebra(&self) -> &LmAlgebra {
        &self.algebra
    }

    pub fn space(&self) -> &LnPSpace {
        &self.space
    }

    pub fn spectrum(&self) -> &PrimeSpectrum {
        &self.spectrum
    }

    /// `sigma(a) = {P in X(A) : a in P}`.
    pub fn sigma(&self, a: usize) -> Subset {
        self.sigma[a]
    }

    /// The element `a` with `sigma(a) = u`, if `u` is in the image.
    pub fn sigma_inverse(&self, u: Subset) -> Option<usize> {
        self.sigma.iter().position(|&s| s == u)
    }

    /// `X(A)` as a subset.
    pub fn points(&self) -> Subset {
        self.space.carrier()
    }
}

/// The dual space `X(A)` of an algebra.
pub fn dual_space(algebra: &LmAlgebra) -> LnPSpace {
    Dual::new(algebra.clone()).space
}

/// The algebra of increasing subsets of a space together with the subset
/// each element stands for.
#[derive(Clone, Debug)]
pub struct CoDual {
    pub algebra: LmAlgebra,
    pub sets: Vec<Subset>,
}

/// `D(X)` with union, intersection and `phi_i(U) = f_i^{-1}(U)`.
pub fn co_dual(x: &LnPSpace) -> Result<CoDual, DualityError> {
    let report = validate_space(x);
    if !report.is_empty() {
        return Err(DualityError::InvalidSpace(report));
    }
    let sets = x.poset().increasing_sets();
    if sets.len() > MAX_CARRIER {
        return Err(DualityError::TooLarge(sets.len()));
    }
    let index: HashMap<Subset, usize> = sets.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let names = sets
        .iter()
        .map(|&s| format!("{{{}}}", x.poset().names_of(s).join(",")))
        .collect();
    let poset = Poset::from_relation(names, |a, b| sets[a].is_subset(sets[b]))?;
    let lattice = DistLattice::from_poset(poset)?;
    let phi = x
        .indices()
        .map(|i| sets.iter().map(|&u| index[&x.preimage(i, u)]).collect())
        .collect();
    let algebra = LmAlgebra::try_new(lattice, x.n(), phi)?;
    Ok(CoDual { algebra, sets })
}

/// The two natural isomorphisms of the duality, as index tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    /// `A -> D(X(A))`, indexing elements of the co-dual algebra.
    pub sigma: Vec<usize>,
    /// `X(A) -> X(D(X(A)))`, indexing prime filters of the co-dual algebra.
    pub epsilon: Vec<usize>,
}

/// Verifies that `sigma_A` is an LM_n-isomorphism onto `D(X(A))` and that
/// `epsilon_X` is an order isomorphism commuting with every `f_i`.
pub fn round_trip(algebra: &LmAlgebra) -> Result<RoundTrip, DualityError> {
    let dual = Dual::new(algebra.clone());
    let co = co_dual(dual.space())?;
    let index: HashMap<Subset, usize> =
        co.sets.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let fail = |what: String| DualityError::RoundTripFailure(what);

    let sigma: Vec<usize> = (0..algebra.len())
        .map(|a| {
            index
                .get(&dual.sigma(a))
                .copied()
                .ok_or_else(|| fail(format!("sigma({}) is not increasing", algebra.name(a))))
        })
        .collect::<Result<_, _>>()?;
    if co.algebra.len() != algebra.len() {
        return Err(fail(format!(
            "|D(X(A))| = {} but |A| = {}",
            co.algebra.len(),
            algebra.len()
        )));
    }
    let mut hit = Subset::EMPTY;
    for &s in &sigma {
        hit.insert(s);
    }
    if hit.len() != algebra.len() {
        return Err(fail("sigma is not injective".into()));
    }
    if let Some(why) = algebra.homomorphism_failure(&co.algebra, &sigma) {
        return Err(fail(format!("sigma does not preserve {why}")));
    }

    let epsilon = space_round_trip_with(dual.space(), &co)?;
    Ok(RoundTrip { sigma, epsilon })
}

/// `epsilon_X : X -> X(D(X))` for a valid space.
pub fn space_round_trip(x: &LnPSpace) -> Result<Vec<usize>, DualityError> {
    let co = co_dual(x)?;
    space_round_trip_with(x, &co)
}

fn space_round_trip_with(x: &LnPSpace, co: &CoDual) -> Result<Vec<usize>, DualityError> {
    let back = Dual::new(co.algebra.clone());
    let fail = |what: String| DualityError::RoundTripFailure(what);
    let p = x.poset();
    let epsilon: Vec<usize> = (0..x.len())
        .map(|a| {
            let filter: Subset = co
                .sets
                .iter()
                .enumerate()
                .filter(|(_, u)| u.contains(a))
                .map(|(k, _)| k)
                .collect();
            back.spectrum()
                .position(filter)
                .ok_or_else(|| fail(format!("epsilon({}) is not a prime filter", p.name(a))))
        })
        .collect::<Result<_, _>>()?;
    if back.space().len() != x.len() {
        return Err(fail(format!(
            "|X(D(X))| = {} but |X| = {}",
            back.space().len(),
            x.len()
        )));
    }
    let y = back.space();
    for a in 0..x.len() {
        for b in 0..x.len() {
            if p.leq(a, b) != y.poset().leq(epsilon[a], epsilon[b]) {
                return Err(fail(format!(
                    "epsilon does not preserve the order between {} and {}",
                    p.name(a),
                    p.name(b)
                )));
            }
        }
        for i in x.indices() {
            if epsilon[x.f(i, a)] != y.f(i, epsilon[a]) {
                return Err(fail(format!("epsilon does not commute with f_{i} at {}", p.name(a))));
            }
        }
    }
    Ok(epsilon)
}

/// Dual of a homomorphism `h : A -> B`: the map `X(B) -> X(A)`,
/// `P -> h^{-1}(P)`.
pub fn dual_hom(source: &Dual, target: &Dual, h: &[usize]) -> Result<Vec<usize>, DualityError> {
    if let Some(why) = source.algebra().homomorphism_failure(target.algebra(), h) {
        return Err(DualityError::NotAHomomorphism(why));
    }
    let map: Vec<usize> = target
        .spectrum()
        .filters()
        .iter()
        .map(|&p| {
            source
                .spectrum()
                .position(p.preimage(h))
                .expect("preimage of a prime filter under a homomorphism is prime")
        })
        .collect();
    let (xs, xt) = (source.space(), target.space());
    for a in 0..xt.len() {
        for b in xt.poset().principal_up(a).iter() {
            if !xs.poset().leq(map[a], map[b]) {
                return Err(DualityError::RoundTripFailure(
                    "dual map is not increasing".into(),
                ));
            }
        }
        for i in xt.indices() {
            if xs.f(i, map[a]) != map[xt.f(i, a)] {
                return Err(DualityError::RoundTripFailure(format!(
                    "dual map does not commute with f_{i}"
                )));
            }
        }
    }
    Ok(map)
}
