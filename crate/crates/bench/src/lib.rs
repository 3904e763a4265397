//! Seeded fixtures shared by the criterion benchmarks.

use mss_core::scheme::{self, Bulletin, SchemeParams, SecretSet, Setup, Variant};
use mss_core::{DealerRng, FieldPrime, IndexedTerms, Share};
use rand::SeedableRng;

/// One deal with a single secret of threshold `t` among `n` participants.
pub struct Fixture {
    pub secrets: SecretSet,
    pub shares: Vec<Share>,
    pub setup: Setup,
    pub bulletin: Bulletin,
    /// Subshadows of secret 1 for every participant.
    pub subshadows: IndexedTerms,
}

impl Fixture {
    pub fn new(variant: Variant, n: usize, t: usize, seed: u64) -> Self {
        let params = SchemeParams::new(variant, n, vec![t], FieldPrime::default()).expect("valid parameters");
        let mut rng = DealerRng::seed_from_u64(seed);
        let secrets = SecretSet::random(&params, &mut rng);
        let (shares, setup) = scheme::setup(&params, &mut rng).expect("setup");
        let bulletin = scheme::construct(setup.clone(), &secrets, &shares, &mut rng).expect("construct");
        let shadows = scheme::shadows_for(&bulletin, 1, &shares).expect("shadows");
        let subshadows = scheme::assemble_subshadows(&bulletin, 1, &shadows).expect("subshadows");
        Fixture {
            secrets,
            shares,
            setup,
            bulletin,
            subshadows,
        }
    }

    /// The `t` consecutive subshadows starting at participant `start`.
    pub fn window(&self, start: usize) -> IndexedTerms {
        let t = self.bulletin.params.threshold(1).expect("secret 1 exists");
        self.subshadows
            .range(start..start + t)
            .map(|(j, u)| (*j, u.clone()))
            .collect()
    }
}
