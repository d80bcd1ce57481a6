//! Boolean (complemented) congruences.

use crate::congruence::{
    filter_congruence, is_semimodal, modal_subsets, theta_from_subset,
    ConLattice, Congruence,
};
use crate::duality::{Dual, LnPSpace};
use crate::error::BooleanError;
use crate::subset::Subset;

/// A Boolean congruence with its dual subset and generating element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanCongruenceRecord {
    pub congruence: Congruence,
    /// Modal `Y` with `congruence = Theta_S(Y)`.
    pub dual_subset: Subset,
    /// The Boolean element `c` with `sigma(c) = Y`.
    pub generator: usize,
    pub complement: Congruence,
}

/// Both Boolean criteria for member `k` of `con`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanVerdict {
    /// Complement found by searching the lattice.
    pub complement: Option<usize>,
    /// Dual subset and its complement are both semimodal.
    pub modal_dual: bool,
}

impl BooleanVerdict {
    pub fn is_boolean(&self) -> bool {
        self.complement.is_some()
    }

    pub fn agree(&self) -> bool {
        self.complement.is_some() == self.modal_dual
    }
}

/// Lattice-complement search, with the dual-subset criterion alongside.
pub fn is_boolean(dual: &Dual, con: &ConLattice, k: usize) -> BooleanVerdict {
    let x = dual.space();
    let y = con.dual_subset(k);
    BooleanVerdict {
        complement: con.complement(k),
        modal_dual: is_semimodal(x, y) && is_semimodal(x, x.carrier() - y),
    }
}

/// One record per modal subset of `X(A)`.
pub fn boolean_congruences(dual: &Dual) -> Result<Vec<BooleanCongruenceRecord>, BooleanError> {
    let a = dual.algebra();
    let c_a = a.boolean_elements()?;
    let x = dual.space();
    let mut out = Vec::new();
    for y in modal_subsets(x)? {
        let generator = dual
            .sigma_inverse(y)
            .filter(|&c| c_a.contains(c))
            .ok_or_else(|| BooleanError::NoGenerator(subset_names(x, y)))?;
        let congruence = theta_from_subset(dual, y)?;
        let complement = theta_from_subset(dual, x.carrier() - y)?;
        if !congruence.meet(&complement)?.is_identity() || !congruence.join(&complement)?.is_total() {
            return Err(BooleanError::CharacterisationMismatch(format!(
                "Theta_S of {} and of its complement are not complements",
                subset_names(x, y)
            )));
        }
        out.push(BooleanCongruenceRecord {
            congruence,
            dual_subset: y,
            generator,
            complement,
        });
    }
    Ok(out)
}

fn subset_names(x: &LnPSpace, y: Subset) -> String {
    format!("{{{}}}", x.poset().names_of(y).join(","))
}

/// `Theta([phi_i c))` for a Boolean element `c`.
pub fn boolean_from_element(dual: &Dual, c: usize, i: usize) -> Result<Congruence, BooleanError> {
    let a = dual.algebra();
    if !a.boolean_elements()?.contains(c) {
        return Err(BooleanError::NotBoolean(a.name(c).to_owned()));
    }
    let filter = a.poset().principal_up(a.phi(i, c));
    Ok(filter_congruence(dual, filter)?.congruence)
}

/// `theta o psi` as rows.
pub fn compose(theta: &Congruence, psi: &Congruence) -> Vec<Subset> {
    let (r1, r2) = (theta.rows(), psi.rows());
    r1.iter()
        .map(|row| row.iter().fold(Subset::EMPTY, |acc, y| acc | r2[y]))
        .collect()
}

pub fn check_permutable(theta: &Congruence, psi: &Congruence) -> bool {
    compose(theta, psi) == compose(psi, theta)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformityReport {
    pub class_sizes: Vec<usize>,
    /// All classes have the same size.
    pub uniform: bool,
    /// Class of `b` is `{(b ^ a) v c : c <= -a}` for every `b`.
    pub shape: bool,
    /// Class of `0` is the down-set of `-a`.
    pub zero_class: bool,
}

impl UniformityReport {
    pub fn holds(&self) -> bool {
        self.uniform && self.shape && self.zero_class
    }
}

/// Class structure of a Boolean congruence generated by the Boolean
/// element `a`.
pub fn uniformity_report(dual: &Dual, theta: &Congruence, a: usize) -> Result<UniformityReport, BooleanError> {
    let alg = dual.algebra();
    let not_a = alg
        .complement_of(a)
        .ok_or_else(|| BooleanError::NotBoolean(alg.name(a).to_owned()))?;
    let class_sizes: Vec<usize> = theta.classes().iter().map(|c| c.len()).collect();
    let uniform = class_sizes.windows(2).all(|w| w[0] == w[1]);
    let below = alg.poset().principal_down(not_a);
    let shape = (0..alg.len()).all(|b| {
        let formula: Subset = below
            .iter()
            .map(|c| alg.join(alg.meet(b, a), c))
            .collect();
        formula == theta.class(b)
    });
    let zero_class = theta.class(alg.bottom()) == below;
    Ok(UniformityReport {
        class_sizes,
        uniform,
        shape,
        zero_class,
    })
}

/// The equivalent descriptions of a principal congruence being Boolean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalBoolean {
    pub a: usize,
    pub b: usize,
    /// `/\_i (phi_bar_i b v phi_i a)`.
    pub certificate: usize,
    pub certificate_boolean: bool,
    /// `Theta(a, b)` has a complement in `Con(A)`.
    pub boolean: bool,
    /// `G = U_i sigma(phi_i b ^ phi_bar_i a)` is closed.
    pub union_closed: bool,
    /// `G = sigma(\/_i (phi_i b ^ phi_bar_i a))`.
    pub finite_join: bool,
    /// `Theta(a, b) = Theta([certificate))`.
    pub filter_form: bool,
}

impl PrincipalBoolean {
    pub fn holds(&self) -> bool {
        self.certificate_boolean && self.boolean && self.union_closed && self.finite_join && self.filter_form
    }
}

/// Evaluates every link of the equivalence chain for `a <= b`.
pub fn principal_is_boolean(
    dual: &Dual,
    con: &ConLattice,
    theta_ab: &Congruence,
    a: usize,
    b: usize,
) -> Result<PrincipalBoolean, BooleanError> {
    let alg = dual.algebra();
    let certificate = crate::congruence::filter_generator(alg, a, b);
    let g = alg.indices().fold(Subset::EMPTY, |acc, i| {
        acc | dual.sigma(alg.meet(alg.phi(i, b), alg.phi_bar(i, a)))
    });
    let join = crate::congruence::join_generator(alg, a, b);
    let k = con
        .index_of(theta_ab)
        .ok_or_else(|| BooleanError::CharacterisationMismatch("principal congruence not in Con(A)".into()))?;
    let filter = filter_congruence(dual, alg.poset().principal_up(certificate))?;
    Ok(PrincipalBoolean {
        a,
        b,
        certificate,
        certificate_boolean: alg.boolean_elements()?.contains(certificate),
        boolean: con.complement(k).is_some(),
        union_closed: crate::congruence::closure(g) == g,
        finite_join: dual.sigma(join) == g,
        filter_form: filter.congruence == *theta_ab,
    })
}

/// `U_i f_i^{-1}(R) = (R] u [R)`, checked when `R` lies inside the left side.
pub fn set_identity_holds(x: &LnPSpace, r: Subset) -> bool {
    let pre = x.union_of_preimages(r);
    !r.is_subset(pre) || pre == x.poset().down_set(r) | x.poset().up_set(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{all_congruences, principal_congruence, Mode, DEFAULT_MAX_SPACE_SIZE};
    use crate::lm::{make_chain, make_product};

    fn c3sq_dual() -> Dual {
        let c3 = make_chain(3).unwrap();
        Dual::new(make_product(&c3, &c3).unwrap())
    }

    fn first_collapse() -> Congruence {
        Congruence::from_key(9, |p| p % 3)
    }

    #[test]
    fn complements_in_c3_squared() {
        let dual = c3sq_dual();
        let con = all_congruences(&dual, Mode::Lm, DEFAULT_MAX_SPACE_SIZE).unwrap();
        let k = con.index_of(&first_collapse()).unwrap();
        let v = is_boolean(&dual, &con, k);
        assert!(v.agree());
        let other = Congruence::from_key(9, |p| p / 3);
        assert_eq!(con.get(v.complement.unwrap()), &other);
        let delta = con.index_of(&Congruence::identity(9)).unwrap();
        let c = is_boolean(&dual, &con, delta).complement.unwrap();
        assert!(con.get(c).is_total());
    }

    #[test]
    fn records() {
        let dual = Dual::new(make_chain(3).unwrap());
        let recs = boolean_congruences(&dual).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].generator, 0);
        assert!(recs[0].congruence.is_total());
        assert_eq!(recs[1].generator, 2);

        let dual = c3sq_dual();
        let recs = boolean_congruences(&dual).unwrap();
        let mut gens: Vec<usize> = recs.iter().map(|r| r.generator).collect();
        gens.sort();
        assert_eq!(gens, vec![0, 2, 6, 8]);

        assert_eq!(boolean_congruences(&Dual::new(make_chain(2).unwrap())).unwrap().len(), 2);
    }

    #[test]
    fn from_element() {
        let dual = c3sq_dual();
        for i in 1..3 {
            assert_eq!(boolean_from_element(&dual, 2, i).unwrap(), first_collapse());
            assert!(boolean_from_element(&dual, 8, i).unwrap().is_identity());
            assert!(boolean_from_element(&dual, 0, i).unwrap().is_total());
        }
        assert!(matches!(boolean_from_element(&dual, 4, 1), Err(BooleanError::NotBoolean(_))));
    }

    #[test]
    fn permutability_and_uniformity() {
        let dual = c3sq_dual();
        let other = Congruence::from_key(9, |p| p / 3);
        assert!(check_permutable(&first_collapse(), &other));
        assert!(check_permutable(&first_collapse(), &Congruence::identity(9)));

        let r = uniformity_report(&dual, &first_collapse(), 2).unwrap();
        assert_eq!(r.class_sizes, vec![3, 3, 3]);
        assert!(r.holds());
        assert_eq!(first_collapse().class(0), [0, 3, 6].into_iter().collect());
        assert!(uniformity_report(&dual, &Congruence::identity(9), 8).unwrap().holds());
        let all = uniformity_report(&dual, &Congruence::total(9), 0).unwrap();
        assert_eq!(all.class_sizes, vec![9]);
        assert!(all.holds());
    }

    #[test]
    fn principal_boolean_certificates() {
        let dual = Dual::new(make_chain(3).unwrap());
        let con = all_congruences(&dual, Mode::Lm, DEFAULT_MAX_SPACE_SIZE).unwrap();
        let t = principal_congruence(&dual, 0, 1).unwrap();
        let pb = principal_is_boolean(&dual, &con, &t, 0, 1).unwrap();
        assert_eq!(pb.certificate, 0);
        assert!(pb.holds());
        let t = principal_congruence(&dual, 1, 1).unwrap();
        assert_eq!(principal_is_boolean(&dual, &con, &t, 1, 1).unwrap().certificate, 2);

        let dual = c3sq_dual();
        let con = all_congruences(&dual, Mode::Lm, DEFAULT_MAX_SPACE_SIZE).unwrap();
        let t = principal_congruence(&dual, 0, 3).unwrap();
        let pb = principal_is_boolean(&dual, &con, &t, 0, 3).unwrap();
        assert_eq!(pb.certificate, 2);
        assert!(pb.holds());
    }

    #[test]
    fn set_identity_on_convex_sets() {
        let dual = c3sq_dual();
        for a in 0..9 {
            for b in dual.algebra().poset().principal_up(a).iter() {
                assert!(set_identity_holds(dual.space(), crate::congruence::difference_set(&dual, a, b)));
            }
        }
    }
}
