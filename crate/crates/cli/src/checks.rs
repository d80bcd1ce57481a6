//! Theorem registry and the regression harness.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use lmkit_core::boolean::{
    boolean_congruences, boolean_from_element, check_permutable, is_boolean, principal_is_boolean,
    set_identity_holds, uniformity_report, BooleanCongruenceRecord,
};
use lmkit_core::congruence::{
    all_congruences, classify_subset, comparable_pairs, filter_congruence, generate_congruence_oracle,
    is_modal, is_principal, is_semimodal, modal_subsets, non_principality_witnesses, ordered_pair,
    principal_forms, principal_table, principal_theta_forms, proper_dense_subsets, theta_from_subset,
};
use lmkit_core::duality::{
    chain_decomposition, co_dual, dual_hom, is_sum_of_segments, lp7_failure, round_trip,
    space_round_trip, validate_space,
};
use lmkit_core::{make_ideal, ConLattice, Congruence, Dual, LmAlgebra, LnPSpace, Mode, Poset, Subset};
use serde::Serialize;

use crate::corpus::CorpusEntry;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Duality,
    Principal,
    Boolean,
}

impl Suite {
    pub fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Duality => "duality",
            Suite::Principal => "principal",
            Suite::Boolean => "boolean",
        }
    }
}

/// Everything a check needs about one algebra, computed once.
pub struct Ctx {
    pub name: String,
    pub dual: Dual,
    pub max_space_size: usize,
    pub con: Result<ConLattice, String>,
    pub con_theta: Result<ConLattice, String>,
    pub table: Vec<((usize, usize), Congruence)>,
    pub table_theta: Vec<((usize, usize), Congruence)>,
    pub records: Result<Vec<BooleanCongruenceRecord>, String>,
}

impl Ctx {
    pub fn new(name: &str, algebra: LmAlgebra, max_space_size: usize) -> Self {
        let dual = Dual::new(algebra);
        let con = all_congruences(&dual, Mode::Lm, max_space_size).map_err(|e| e.to_string());
        let con_theta = all_congruences(&dual, Mode::Theta, max_space_size).map_err(|e| e.to_string());
        let table = principal_table(dual.algebra(), Mode::Lm);
        let table_theta = principal_table(dual.algebra(), Mode::Theta);
        let records = boolean_congruences(&dual).map_err(|e| e.to_string());
        Ctx {
            name: name.to_owned(),
            dual,
            max_space_size,
            con,
            con_theta,
            table,
            table_theta,
            records,
        }
    }

    pub fn algebra(&self) -> &LmAlgebra {
        self.dual.algebra()
    }

    pub fn space(&self) -> &LnPSpace {
        self.dual.space()
    }

    fn small(&self) -> bool {
        self.space().len() <= self.max_space_size
    }
}

/// Instances checked and failure witnesses for one theorem on one algebra.
#[derive(Default)]
pub struct Outcome {
    pub instances: usize,
    pub failures: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    fn fail(&mut self, witness: String) {
        self.instances += 1;
        self.failures.push(witness);
    }
}

pub struct Theorem {
    pub id: &'static str,
    pub suite: Suite,
    /// What the check asserts, in one line.
    pub anchor: &'static str,
    pub run: fn(&Ctx) -> Outcome,
}

pub const REGISTRY: &[Theorem] = &[
    Theorem {
        id: "duality.space-axioms",
        suite: Suite::Duality,
        anchor: "X(A) satisfies lP3-lP5, lP8-lP10 and lnP6",
        run: space_axioms,
    },
    Theorem {
        id: "duality.surjectivity-equivalence",
        suite: Suite::Duality,
        anchor: "lnP6, lnP7 and lnP8 agree, on X(A) and on spaces with an added shadow point",
        run: surjectivity_equivalence,
    },
    Theorem {
        id: "duality.round-trip",
        suite: Suite::Duality,
        anchor: "sigma_A and epsilon_X are isomorphisms and |D(X(A))| = |A|",
        run: duality_round_trip,
    },
    Theorem {
        id: "duality.lp7",
        suite: Suite::Duality,
        anchor: "increasing sets with equal preimages under every f_i are equal",
        run: lp7,
    },
    Theorem {
        id: "duality.segments",
        suite: Suite::Duality,
        anchor: "X is the cardinal sum of the segments [f_1(x), f_{n-1}(x)]",
        run: segments,
    },
    Theorem {
        id: "duality.chain-decomposition",
        suite: Suite::Duality,
        anchor: "X is a cardinal sum of maximal chains {f_i(x)} of size at most n-1, each convex and modal",
        run: chains,
    },
    Theorem {
        id: "duality.functoriality",
        suite: Suite::Duality,
        anchor: "duals of homomorphisms are increasing, commute with f_i, and reverse composition",
        run: functoriality,
    },
    Theorem {
        id: "congruence.subset-lemma",
        suite: Suite::Principal,
        anchor: "for nonempty Y: semimodal iff modal iff union of maximal chains; complements of modal sets are modal",
        run: subset_lemma,
    },
    Theorem {
        id: "congruence.correspondence",
        suite: Suite::Principal,
        anchor: "Y -> Theta_S(Y) is an order-reversing bijection from semimodal subsets onto Con(A)",
        run: correspondence_lm,
    },
    Theorem {
        id: "congruence.theta-correspondence",
        suite: Suite::Principal,
        anchor: "Y -> Theta_S(Y) is an order-reversing bijection from theta-subsets onto Con_theta(A)",
        run: correspondence_theta,
    },
    Theorem {
        id: "congruence.modal-correspondence",
        suite: Suite::Principal,
        anchor: "Con(A) is the image of the modal subsets under Theta_S",
        run: modal_correspondence,
    },
    Theorem {
        id: "congruence.theta-within-lm",
        suite: Suite::Principal,
        anchor: "every theta-congruence is an LM-congruence",
        run: theta_within_lm,
    },
    Theorem {
        id: "principal.forms",
        suite: Suite::Principal,
        anchor: "closed forms of Theta(a,b) (least open, set, sigma, modal, join, filter) equal the oracle",
        run: forms_lm,
    },
    Theorem {
        id: "principal.theta-forms",
        suite: Suite::Principal,
        anchor: "closed forms of the principal theta-congruence equal the oracle",
        run: forms_theta,
    },
    Theorem {
        id: "principal.incomparable-reduction",
        suite: Suite::Principal,
        anchor: "Theta(a,b) = Theta(a^b, a v b) for incomparable a, b",
        run: incomparable_reduction,
    },
    Theorem {
        id: "principal.all-principal",
        suite: Suite::Principal,
        anchor: "every congruence is principal, via a convex R with G = R u U f_i^{-1}(R) and a modal witness",
        run: all_principal,
    },
    Theorem {
        id: "principal.meet-lm",
        suite: Suite::Principal,
        anchor: "the meet of two principal congruences is principal",
        run: meet_lm,
    },
    Theorem {
        id: "principal.meet-theta",
        suite: Suite::Principal,
        anchor: "the meet of two principal theta-congruences is principal",
        run: meet_theta,
    },
    Theorem {
        id: "principal.set-identity",
        suite: Suite::Principal,
        anchor: "R inside U f_i^{-1}(R) implies U f_i^{-1}(R) = (R] u [R)",
        run: set_identity,
    },
    Theorem {
        id: "principal.filter-congruence",
        suite: Suite::Principal,
        anchor: "Theta(F) = Theta_S(Y_F) whenever Y_F is semimodal",
        run: filters,
    },
    Theorem {
        id: "principal.vacuity",
        suite: Suite::Principal,
        anchor: "the non-principality hypothesis for meets needs a proper dense subset, which a finite space lacks",
        run: vacuity,
    },
    Theorem {
        id: "boolean.count",
        suite: Suite::Boolean,
        anchor: "|Con_b(A)| = |C(A)|",
        run: boolean_count,
    },
    Theorem {
        id: "boolean.criteria",
        suite: Suite::Boolean,
        anchor: "Boolean iff dual subset modal, and Boolean in Con(A) iff Boolean in Con_theta(A)",
        run: boolean_criteria,
    },
    Theorem {
        id: "boolean.from-element",
        suite: Suite::Boolean,
        anchor: "Theta([phi_i c)) is the Boolean congruence of c for every i, and c -> Theta([c)) reverses order bijectively",
        run: boolean_elements,
    },
    Theorem {
        id: "boolean.principal",
        suite: Suite::Boolean,
        anchor: "every Boolean congruence is principal and theta-principal",
        run: boolean_principal,
    },
    Theorem {
        id: "boolean.permutable",
        suite: Suite::Boolean,
        anchor: "Boolean congruences permute",
        run: boolean_permutable,
    },
    Theorem {
        id: "boolean.uniformity",
        suite: Suite::Boolean,
        anchor: "classes of a Boolean congruence have equal size and the shape {(b ^ a) v c : c <= -a}",
        run: boolean_uniformity,
    },
    Theorem {
        id: "boolean.principal-criterion",
        suite: Suite::Boolean,
        anchor: "Theta(a,b) is Boolean, G is closed, G = sigma of a finite join, and Theta(a,b) = Theta([certificate))",
        run: boolean_principal_criterion,
    },
    Theorem {
        id: "boolean.lmn-coincide",
        suite: Suite::Boolean,
        anchor: "principal and Boolean congruences coincide",
        run: lmn_coincide,
    },
];

fn set_name(p: &Poset, y: Subset) -> String {
    format!("{{{}}}", p.names_of(y).join(","))
}

fn pair_name(a: &LmAlgebra, x: usize, y: usize) -> String {
    format!("({}, {})", a.name(x), a.name(y))
}

fn space_axioms(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::default();
    let r = validate_space(ctx.space());
    o.check(r.is_empty(), || r.to_string());
    o
}

/// `X` with a new isolated point `z` whose images are those of `p`.
fn with_shadow(x: &LnPSpace, p: usize) -> LnPSpace {
    let len = x.len();
    let mut names = x.poset().names().to_vec();
    names.push("z".into());
    let poset = Poset::from_relation(names, |a, b| a == b || (a < len && b < len && x.poset().leq(a, b)))
        .expect("disjoint union of posets");
    let maps = x
        .indices()
        .map(|i| (0..=len).map(|a| x.f(i, if a == len { p } else { a })).collect())
        .collect();
    LnPSpace::new(poset, x.n(), maps).expect("maps are total")
}

fn surjectivity_equivalence(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::default();
    let r = validate_space(ctx.space());
    o.check(r.lnp6 && r.lnp7 && r.lnp8, || {
        format!("lnP6={} lnP7={} lnP8={} on X(A)", r.lnp6, r.lnp7, r.lnp8)
    });
    for p in 0..ctx.space().len() {
        let y = with_shadow(ctx.space(), p);
        let r = validate_space(&y);
        let others_hold = !(r.violates(lmkit_core::SpaceAxiom::LP3)
            || r.violates(lmkit_core::SpaceAxiom::LP4)
            || r.violates(lmkit_core::SpaceAxiom::LP5));
        o.check(others_hold && r.equivalence_holds() && !r.lnp6, || {
            format!(
                "shadow of {}: lnP6={} lnP7={} lnP8={}",
                ctx.space().poset().name(p),
                r.lnp6,
                r.lnp7,
                r.lnp8
            )
        });
    }
    o
}

fn duality_round_trip(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::default();
    match round_trip(ctx.algebra()) {
        Ok(rt) => o.check(rt.sigma.len() == ctx.algebra().len(), || "sigma table size".into()),
        Err(e) => o.fail(e.to_string()),
    }
    match co_dual(ctx.space()) {
        Ok(co) => o.check(co.algebra.len() == ctx.algebra().len(), || {
            format!("|D(X(A))| = {} but |A| = {}", co.algebra.len(), ctx.algebra().len())
        }),
        Err(e) => o.fail(e.to_string()),
    }
    if let Err(e) = space_round_trip(ctx.space()) {
        o.fail(e.to_string());
    } else {
        o.instances += 1;
    }
    o
}

fn lp7(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::default();
    let p = ctx.space().poset();
    let w = lp7_failure(ctx.space());
    o.check(w.is_none(), || {
        let (u, v) = w.unwrap();
        format!("{} and {}", set_name(p, u), set_name(p, v))
    });
    o
}

fn segments(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::default();
    o.check(is_sum_of_segments(ctx.space()), || "segments overlap or are related".into());
    o
}

fn chains(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::default();
    let x = ctx.space();
    let p = x.poset();
    match chain_decomposition(x) {
        Ok(blocks) => {
            let union = blocks.iter().fold(Subset::EMPTY, |acc, &b| acc | b);
            let total: usize = blocks.iter().map(|b| b.len()).sum();
            o.check(union == x.carrier() && total == x.len(), || "blocks do not partition X".into());
            let mut components = p.components();
            components.sort();
            let mut sorted = blocks.clone();
            sorted.sort();
            o.check(components == sorted, || "blocks are not the maximal chains".into());
            for b in blocks {
                let flags = classify_subset(x, b);
                o.check(
                    p.is_chain(b) && b.len() < x.n() && flags.convex && flags.modal,
                    || format!("block {}", set_name(p, b)),
                );
            }
        }
        Err(e) => o.fail(e.to_string()),
    }
    o
}

/// `x -> x ^ c` into the ideal `(c]`, as an index map.
fn restriction(a: &LmAlgebra, members: &[usize], c: usize) -> Vec<usize> {
    (0..a.len())
        .map(|x| members.binary_search(&a.meet(x, c)).expect("x ^ c lies in (c]"))
        .collect()
}

fn functoriality(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::default();
    let a = ctx.algebra();
    let identity: Vec<usize> = (0..a.len()).collect();
    match dual_hom(&ctx.dual, &ctx.dual, &identity) {
        Ok(m) => o.check(m == (0..ctx.space().len()).collect::<Vec<_>>(), || "dual of identity".into()),
        Err(e) => o.fail(e.to_string()),
    }
    let centre = match a.boolean_elements() {
        Ok(c) => c,
        Err(e) => {
            o.fail(e.to_string());
            return o;
        }
    };
    let centre: Vec<usize> = centre.iter().filter(|&c| c != a.bottom()).collect();
    for &c in &centre {
        let (ideal, members) = make_ideal(a, c).expect("c is Boolean and nonzero");
        let h = restriction(a, &members, c);
        let d_ideal = Dual::new(ideal.clone());
        let dh = match dual_hom(&ctx.dual, &d_ideal, &h) {
            Ok(m) => m,
            Err(e) => {
                o.fail(format!("x ^ {}: {e}", a.name(c)));
                continue;
            }
        };
        o.instances += 1;
        for &c2 in centre.iter().filter(|&&c2| a.leq(c2, c)) {
            let (inner, inner_members) = make_ideal(a, c2).expect("c2 is Boolean and nonzero");
            let c2_in_ideal = members.binary_search(&c2).expect("c2 <= c");
            let g = restriction(&ideal, &inner_members
                .iter()
                .map(|m| members.binary_search(m).expect("inside (c]"))
                .collect::<Vec<_>>(), c2_in_ideal);
            let composite: Vec<usize> = h.iter().map(|&y| g[y]).collect();
            let d_inner = Dual::new(inner);
            match (dual_hom(&d_ideal, &d_inner, &g), dual_hom(&ctx.dual, &d_inner, &composite)) {
                (Ok(dg), Ok(dgh)) => {
                    let reversed: Vec<usize> = dg.iter().map(|&q| dh[q]).collect();
                    o.check(reversed == dgh, || {
                        format!("dual of (x ^ {}) after (x ^ {})", a.name(c2), a.name(c))
                    });
                }
                (Err(e), _) | (_, Err(e)) => o.fail(e.to_string()),
            }
        }
    }
    o
}

fn subset_lemma(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::default();
    if !ctx.small() {
        return o;
    }
    let x = ctx.space();
    for y in Subset::all(x.len()) {
        let flags = classify_subset(x, y);
        let complement_ok = !flags.modal || is_modal(x, x.carrier() - y);
        o.check((y.is_empty() || flags.lemma_holds()) && complement_ok, || {
            format!("{} gives {flags:?}", set_name(x.poset(), y))
        });
    }
    o
}

fn correspondence(ctx: &Ctx, con: &Result<ConLattice, String>, mode: Mode) -> Outcome {
    let mut o = Outcome::default();
    match con {
        Ok(c) if c.scanned() => {
            let x = ctx.space();
            let count = Subset::all(x.len())
                .filter(|&y| match mode {
                    Mode::Lm => is_semimodal(x, y),
                    Mode::Theta => lmkit_core::congruence::is_theta_subset(x, y),
                })
                .count();
            o.check(count == c.len(), || format!("{count} subsets for {} congruences", c.len()));
            for k in 0..c.len() {
                let y = c.dual_subset(k);
                o.check(theta_from_subset(&ctx.dual, y).as_ref() == Ok(c.get(k)), || {
                    format!("dual subset of member {k} does not map back")
                });
            }
        }
        Ok(_) => {}
        Err(e) => o.fail(e.clone()),
    }
    o
}

fn correspondence_lm(ctx: &Ctx) -> Outcome {
    correspondence(ctx, &ctx.con, Mode::Lm)
}

fn correspondence_theta(ctx: &Ctx) -> Outcome {
    correspondence(ctx, &ctx.con_theta, Mode::Theta)
}

fn modal_correspondence(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::default();
    let con = match &ctx.con {
        Ok(c) => c,
        Err(e) => {
            o.fail(e.clone());
            return o;
        }
    };
    match modal_subsets(ctx.space()) {
        Ok(ys) => {
            let image: BTreeSet<Congruence> = ys
                .iter()
                .filter_map(|&y| theta_from_subset(&ctx.dual, y).ok())
                .collect();
            let all: BTreeSet<Congruence> = con.congruences().iter().cloned().collect();
            o.check(image.len() == ys.len() && image == all, || {
                format!("{} modal subsets, {} images, {} congruences", ys.len(), image.len(), all.len())
            });
        }
        Err(e) => o.fail(e.to_string()),
    }
    o
}

fn theta_within_lm(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::default();
    let (con, theta) = match (&ctx.con, &ctx.con_theta) {
        (Ok(c), Ok(t)) => (c, t),
        (Err(e), _) | (_, Err(e)) => {
            o.fail(e.clone());
            return o;
        }
    };
    for t in theta.congruences() {
        o.check(
            con.contains(t) && t.is_lm_compatible(ctx.algebra()) && t.is_theta_compatible(ctx.algebra()),
            || t.describe(ctx.algebra()),
        );
    }
    for c in con.congruences() {
        o.check(c.is_lm_compatible(ctx.algebra()), || c.describe(ctx.algebra()));
    }
    o
}

fn forms(ctx: &Ctx, mode: Mode) -> Outcome {
    let mut o = Outcome::default();
    let a = ctx.algebra();
    for (x, y) in comparable_pairs(a) {
        let f = match mode {
            Mode::Lm => principal_forms(&ctx.dual, x, y),
            Mode::Theta => principal_theta_forms(&ctx.dual, x, y),
        };
        o.instances += f.forms.len();
        if let Some(form) = f.mismatch() {
            o.failures.push(format!("{form} at {}", pair_name(a, x, y)));
        }
        let contains = f.oracle.related(x, y)
            && match mode {
                Mode::Lm => f.oracle.is_lm_compatible(a),
                Mode::Theta => f.oracle.is_theta_compatible(a),
            };
        o.check(contains, || format!("oracle result at {} is not a congruence", pair_name(a, x, y)));
    }
    o
}

fn forms_lm(ctx: &Ctx) -> Outcome {
    forms(ctx, Mode::Lm)
}

fn forms_theta(ctx: &Ctx) -> Outcome {
    forms(ctx, Mode::Theta)
}

fn incomparable_reduction(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::default();
    let a = ctx.algebra();
    for x in 0..a.len() {
        for y in x + 1..a.len() {
            if a.leq(x, y) || a.leq(y, x) {
                continue;
            }
            let (lo, hi) = ordered_pair(a, x, y);
            for mode in [Mode::Lm, Mode::Theta] {
                let direct = generate_congruence_oracle(a, &[(x, y)], mode);
                let reduced = generate_congruence_oracle(a, &[(lo, hi)], mode);
                o.check(direct == reduced, || format!("{mode} at {}", pair_name(a, x, y)));
            }
        }
    }
    o
}

fn all_principal(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::default();
    let con = match &ctx.con {
        Ok(c) => c,
        Err(e) => {
            o.fail(e.clone());
            return o;
        }
    };
    for c in con.congruences() {
        let w = is_principal(&ctx.dual, c, &ctx.table);
        o.check(w.is_some_and(|w| w.r_modal), || {
            format!("no modal witness for {}", c.describe(ctx.algebra()))
        });
    }
    o
}

fn meets(ctx: &Ctx, table: &[((usize, usize), Congruence)]) -> Outcome {
    let mut o = Outcome::default();
    let distinct: Vec<&Congruence> = table
        .iter()
        .map(|(_, c)| c)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for (k, p) in distinct.iter().enumerate() {
        for q in &distinct[k..] {
            let m = p.meet(q).expect("same algebra");
            o.check(is_principal(&ctx.dual, &m, table).is_some(), || {
                format!(
                    "{} meet {}",
                    p.describe(ctx.algebra()),
                    q.describe(ctx.algebra())
                )
            });
        }
    }
    o
}

fn meet_lm(ctx: &Ctx) -> Outcome {
    meets(ctx, &ctx.table)
}

fn meet_theta(ctx: &Ctx) -> Outcome {
    meets(ctx, &ctx.table_theta)
}

fn set_identity(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::default();
    let x = ctx.space();
    let candidates: Vec<Subset> = if ctx.small() {
        Subset::all(x.len()).collect()
    } else {
        comparable_pairs(ctx.algebra())
            .into_iter()
            .map(|(a, b)| lmkit_core::congruence::difference_set(&ctx.dual, a, b))
            .collect()
    };
    for r in candidates {
        o.check(set_identity_holds(x, r), || set_name(x.poset(), r));
    }
    o
}

fn filters(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::default();
    let a = ctx.algebra();
    for m in 0..a.len() {
        let filter = a.poset().principal_up(m);
        match filter_congruence(&ctx.dual, filter) {
            Ok(fc) if fc.y_f_semimodal => {
                let via_subset = theta_from_subset(&ctx.dual, fc.y_f);
                o.check(via_subset.as_ref() == Ok(&fc.congruence) && fc.lm_compatible, || {
                    format!("[{})", a.name(m))
                });
            }
            Ok(_) => {}
            Err(e) => o.fail(e.to_string()),
        }
    }
    o
}

fn vacuity(ctx: &Ctx) -> Outcome {
    let mut o = Outcome::default();
    let w = non_principality_witnesses(&ctx.dual);
    o.check(w.is_empty(), || format!("{} pairs satisfy the hypothesis", w.len()));
    if ctx.small() {
        match proper_dense_subsets(ctx.space()) {
            Ok(d) => o.check(d.is_empty(), || format!("{} proper dense subsets", d.len())),
            Err(e) => o.fail(e.to_string()),
        }
    }
    o
}

fn with_records(ctx: &Ctx, f: impl FnOnce(&[BooleanCongruenceRecord], &ConLattice, &mut Outcome)) -> Outcome {
    let mut o = Outcome::default();
    match (&ctx.records, &ctx.con) {
        (Ok(r), Ok(c)) => f(r, c, &mut o),
        (Err(e), _) | (_, Err(e)) => o.fail(e.clone()),
    }
    o
}

fn boolean_count(ctx: &Ctx) -> Outcome {
    with_records(ctx, |records, con, o| {
        let centre = ctx.algebra().boolean_elements().map(|c| c.len()).unwrap_or(0);
        let in_lattice = (0..con.len()).filter(|&k| con.complement(k).is_some()).count();
        o.check(records.len() == centre && in_lattice == centre, || {
            format!("{} records, {} complemented, |C(A)| = {centre}", records.len(), in_lattice)
        });
    })
}

fn boolean_criteria(ctx: &Ctx) -> Outcome {
    with_records(ctx, |_, con, o| {
        let theta = ctx.con_theta.as_ref().ok();
        for k in 0..con.len() {
            let v = is_boolean(&ctx.dual, con, k);
            o.check(v.agree(), || format!("member {k}: {v:?}"));
            if let Some(t) = theta {
                let in_theta = t
                    .index_of(con.get(k))
                    .map(|j| t.complement(j).is_some())
                    .unwrap_or(false);
                o.check(in_theta == v.is_boolean(), || {
                    format!("member {k}: Boolean {} but Boolean theta {in_theta}", v.is_boolean())
                });
            }
        }
    })
}

fn boolean_elements(ctx: &Ctx) -> Outcome {
    with_records(ctx, |records, _, o| {
        let a = ctx.algebra();
        let x = ctx.space();
        for r in records {
            o.check(
                is_modal(x, r.dual_subset)
                    && ctx.dual.sigma(r.generator) == r.dual_subset
                    && theta_from_subset(&ctx.dual, r.dual_subset).as_ref() == Ok(&r.congruence),
                || format!("record of {}", a.name(r.generator)),
            );
            for i in a.indices() {
                let t = boolean_from_element(&ctx.dual, r.generator, i);
                o.check(t.as_ref() == Ok(&r.congruence), || {
                    format!("Theta([phi_{i} {}))", a.name(r.generator))
                });
            }
        }
        for r in records {
            for s in records {
                let le = a.leq(r.generator, s.generator);
                o.check(le == s.congruence.le(&r.congruence), || {
                    format!("order between {} and {}", a.name(r.generator), a.name(s.generator))
                });
            }
        }
    })
}

fn boolean_principal(ctx: &Ctx) -> Outcome {
    with_records(ctx, |records, _, o| {
        for r in records {
            o.check(
                is_principal(&ctx.dual, &r.congruence, &ctx.table).is_some()
                    && is_principal(&ctx.dual, &r.congruence, &ctx.table_theta).is_some(),
                || r.congruence.describe(ctx.algebra()),
            );
        }
    })
}

fn boolean_permutable(ctx: &Ctx) -> Outcome {
    with_records(ctx, |records, _, o| {
        for (k, r) in records.iter().enumerate() {
            for s in &records[k..] {
                o.check(check_permutable(&r.congruence, &s.congruence), || {
                    format!(
                        "{} and {}",
                        ctx.algebra().name(r.generator),
                        ctx.algebra().name(s.generator)
                    )
                });
            }
        }
    })
}

fn boolean_uniformity(ctx: &Ctx) -> Outcome {
    with_records(ctx, |records, _, o| {
        for r in records {
            match uniformity_report(&ctx.dual, &r.congruence, r.generator) {
                Ok(u) => o.check(u.holds(), || format!("{}: {u:?}", ctx.algebra().name(r.generator))),
                Err(e) => o.fail(e.to_string()),
            }
        }
    })
}

fn boolean_principal_criterion(ctx: &Ctx) -> Outcome {
    with_records(ctx, |_, con, o| {
        let a = ctx.algebra();
        for ((x, y), t) in &ctx.table {
            match principal_is_boolean(&ctx.dual, con, t, *x, *y) {
                Ok(pb) => o.check(pb.holds(), || format!("{}: {pb:?}", pair_name(a, *x, *y))),
                Err(e) => o.fail(e.to_string()),
            }
        }
    })
}

fn lmn_coincide(ctx: &Ctx) -> Outcome {
    with_records(ctx, |records, _, o| {
        let principal: BTreeSet<&Congruence> = ctx.table.iter().map(|(_, c)| c).collect();
        let boolean: BTreeSet<&Congruence> = records.iter().map(|r| &r.congruence).collect();
        o.check(principal == boolean, || {
            format!("{} principal, {} Boolean", principal.len(), boolean.len())
        });
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Failure {
    pub algebra: String,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Entry {
    pub id: String,
    pub anchor: String,
    pub instances: usize,
    pub algebras: usize,
    pub failure_count: usize,
    /// First few failures.
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Entry {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AlgebraStatus {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub space_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckReport {
    pub format: &'static str,
    pub suite: Suite,
    pub max_space_size: usize,
    pub algebras: Vec<AlgebraStatus>,
    pub entries: Vec<Entry>,
    pub total_failures: usize,
}

const KEPT_FAILURES: usize = 10;

impl CheckReport {
    pub fn entry(&self, id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn passed(&self) -> bool {
        self.total_failures == 0
    }

    pub fn skipped(&self) -> impl Iterator<Item = &AlgebraStatus> {
        self.algebras.iter().filter(|a| a.skipped.is_some())
    }

    /// The report with timings removed, for byte-for-byte comparison.
    pub fn without_timing(&self) -> CheckReport {
        let mut r = self.clone();
        for e in &mut r.entries {
            e.elapsed_ms = None;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let checked = self.algebras.iter().filter(|a| a.skipped.is_none()).count();
        writeln!(out, "suite {}: {checked} algebras checked", self.suite.as_str()).unwrap();
        for a in self.skipped() {
            writeln!(out, "SKIP {}: {}", a.name, a.skipped.as_deref().unwrap_or("")).unwrap();
        }
        for e in &self.entries {
            let status = if e.passed() { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{status} {:<36} {:>7} instances on {:>2} algebras",
                e.id, e.instances, e.algebras
            )
            .unwrap();
            for f in &e.failures {
                writeln!(out, "     {}: {}", f.algebra, f.witness).unwrap();
            }
        }
        writeln!(out, "{} failures", self.total_failures).unwrap();
        out
    }
}

/// Runs every registered theorem of `suite` on each algebra of the corpus.
/// Entries that fail to build are listed as skipped.
pub fn run_suite(corpus: &[CorpusEntry], suite: Suite, max_space_size: usize) -> CheckReport {
    let selected: Vec<&Theorem> = REGISTRY.iter().filter(|t| suite.includes(t.suite)).collect();
    let mut entries: Vec<Entry> = selected
        .iter()
        .map(|t| Entry {
            id: t.id.to_owned(),
            anchor: t.anchor.to_owned(),
            instances: 0,
            algebras: 0,
            failure_count: 0,
            failures: Vec::new(),
            elapsed_ms: Some(0.0),
        })
        .collect();
    let mut algebras = Vec::new();
    for item in corpus {
        let algebra = match &item.algebra {
            Ok(a) => a.clone(),
            Err(e) => {
                algebras.push(AlgebraStatus {
                    name: item.name.clone(),
                    size: None,
                    space_size: None,
                    skipped: Some(e.clone()),
                });
                continue;
            }
        };
        let ctx = Ctx::new(&item.name, algebra, max_space_size);
        algebras.push(AlgebraStatus {
            name: item.name.clone(),
            size: Some(ctx.algebra().len()),
            space_size: Some(ctx.space().len()),
            skipped: None,
        });
        for (t, e) in selected.iter().zip(entries.iter_mut()) {
            let start = Instant::now();
            let outcome = (t.run)(&ctx);
            let ms = start.elapsed().as_secs_f64() * 1e3;
            e.elapsed_ms = e.elapsed_ms.map(|t| t + ms);
            e.instances += outcome.instances;
            if outcome.instances > 0 {
                e.algebras += 1;
            }
            e.failure_count += outcome.failures.len();
            for w in outcome.failures {
                if e.failures.len() < KEPT_FAILURES {
                    e.failures.push(Failure {
                        algebra: ctx.name.clone(),
                        witness: w,
                    });
                }
            }
        }
    }
    let total_failures = entries.iter().map(|e| e.failure_count).sum();
    CheckReport {
        format: "lmkit-report/1",
        suite,
        max_space_size,
        algebras,
        entries,
        total_failures,
    }
}
