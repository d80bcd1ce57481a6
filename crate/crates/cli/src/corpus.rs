//! The regression corpus: chains, their pairwise products, and
//! hand-written LM_3 files.

use lmkit_core::LmAlgebra;
use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::spec::{build, load, AlgebraSpec, SpecError};

pub const CHAIN_SIZES: [usize; 4] = [2, 3, 4, 5];
pub const MAX_PRODUCT_SIZE: usize = 25;

pub const HAND_WRITTEN: &[(&str, &str)] = &[
    ("lm3_c3", include_str!("../corpus/lm3_c3.json")),
    ("lm3_boolean4", include_str!("../corpus/lm3_boolean4.json")),
    ("lm3_boolean8", include_str!("../corpus/lm3_boolean8.json")),
    ("lm3_c2xc3", include_str!("../corpus/lm3_c2xc3.json")),
    ("lm3_c3xc3xc2", include_str!("../corpus/lm3_c3xc3xc2.json")),
];

pub const CORRUPTED: (&str, &str) = (
    "corrupt_swapped_phi",
    include_str!("../corpus/corrupt_swapped_phi.json"),
);

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub algebra: Result<LmAlgebra, String>,
}

impl CorpusEntry {
    fn from_spec(name: String, spec: &AlgebraSpec) -> Self {
        CorpusEntry {
            name,
            algebra: build(spec).map_err(|e| e.to_string()),
        }
    }

    pub fn from_text(name: &str, text: &str) -> Self {
        CorpusEntry {
            name: name.to_owned(),
            algebra: load(text).map_err(|e: SpecError| e.to_string()),
        }
    }
}

/// Levels of the `k`-chain spread as evenly as possible over `0..n`.
pub fn spread_levels(k: usize, n: usize) -> Vec<usize> {
    let d = k - 1;
    (0..k).map(|t| (2 * t * (n - 1) + d) / (2 * d)).collect()
}

/// The `k`-element chain as an LM_n-algebra (`k <= n`).
pub fn chain_in(k: usize, n: usize) -> AlgebraSpec {
    if k == n {
        AlgebraSpec::Chain { n }
    } else {
        AlgebraSpec::Subchain {
            n,
            levels: spread_levels(k, n),
        }
    }
}

/// Specs of the generated part: every chain, then every product
/// `C_j x C_k` with `j <= k` and at most [`MAX_PRODUCT_SIZE`] elements, the
/// smaller chain embedded in LM_k when `j < k`.
pub fn generated_specs() -> Vec<(String, AlgebraSpec)> {
    let mut out: Vec<(String, AlgebraSpec)> = CHAIN_SIZES
        .iter()
        .map(|&n| (format!("chain-{n}"), AlgebraSpec::Chain { n }))
        .collect();
    for &j in &CHAIN_SIZES {
        for &k in CHAIN_SIZES.iter().filter(|&&k| k >= j) {
            if j * k <= MAX_PRODUCT_SIZE {
                out.push((
                    format!("product-{j}x{k}"),
                    AlgebraSpec::Product {
                        factors: vec![chain_in(j, k), AlgebraSpec::Chain { n: k }],
                    },
                ));
            }
        }
    }
    out
}

pub fn default_corpus() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = generated_specs()
        .into_iter()
        .map(|(name, spec)| CorpusEntry::from_spec(name, &spec))
        .collect();
    out.extend(
        HAND_WRITTEN
            .iter()
            .map(|(name, text)| CorpusEntry::from_text(&format!("file:{name}"), text)),
    );
    out
}

/// Reorders entries with a seeded ChaCha generator.
pub fn shuffle(entries: &mut [CorpusEntry], seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    entries.shuffle(&mut rng);
}

pub fn find(name: &str) -> Option<CorpusEntry> {
    default_corpus().into_iter().find(|e| e.name == name)
}
