mod oracle;

use proptest::prelude::*;
use qsgame::format::{self, Document};
use qsgame::game::{
    best_response, enumerate_nash, is_nash, tarski_extremes, ValidatedGame, ENUMERATION_CAP,
};
use qsgame::generate::{
    generate, random_game, rng_from_seed, transform_table, Family, GenSpec, PayoffStrategy,
};
use qsgame::lattice::{is_subcomplete_exhaustive, is_sublattice};
use qsgame::{ChainCodomain, JointStrategy, RationalGame};

fn game() -> impl Strategy<Value = RationalGame> {
    (2usize..=3, any::<u64>(), any::<bool>()).prop_map(|(players, seed, rejection)| {
        let mut rng = rng_from_seed(seed);
        let (family, strategy) = if rejection {
            (
                Family::Mixed { max: 3 },
                PayoffStrategy::Rejection {
                    levels: 3,
                    budget: 100_000,
                },
            )
        } else {
            (
                Family::Mixed { max: 5 },
                PayoffStrategy::SupermodularThenTransform,
            )
        };
        let players = if rejection { 2 } else { players };
        random_game(players, &family, strategy, &mut rng).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn equilibria_are_fixed_points_of_best_response(g in game()) {
        let s = g.space();
        for x in 0..s.size() {
            let fixed = (0..g.num_players()).all(|i| best_response(&g, i, JointStrategy(x)).contains(s.coord(x, i)));
            prop_assert_eq!(is_nash(&g, JointStrategy(x)), fixed);
        }
        let found: Vec<usize> = enumerate_nash(&g, ENUMERATION_CAP).unwrap().iter().map(|x| x.0).collect();
        prop_assert_eq!(found, oracle::nash(&g));
    }

    #[test]
    fn best_responses_are_subcomplete_sublattices(g in game()) {
        let s = g.space();
        for i in 0..g.num_players() {
            let own = g.strategies(i);
            for x in s.slices_without(i) {
                let br = best_response(&g, i, JointStrategy(x));
                prop_assert!(!br.is_clear());
                prop_assert!(is_sublattice(own, &br).holds());
                prop_assert!(is_subcomplete_exhaustive(own, &br, own.len()).unwrap().holds());
                prop_assert_eq!(oracle::members(&br), oracle::best_response(&g, i, x));
            }
        }
    }

    #[test]
    fn increasing_transforms_keep_the_equilibria(g in game(), seed in any::<u64>(), who in any::<usize>()) {
        let i = who % g.num_players();
        let t = transform_table(g.payoff_table(i), &mut rng_from_seed(seed));
        let h = g.with_payoff(i, ChainCodomain::Rational, t).unwrap();
        prop_assert_eq!(oracle::nash(&g), oracle::nash(&h));
        let a = tarski_extremes(&ValidatedGame::new(&g).unwrap()).unwrap();
        let b = tarski_extremes(&ValidatedGame::new(&h).unwrap()).unwrap();
        prop_assert_eq!((a.largest, a.least), (b.largest, b.least));
    }

    #[test]
    fn games_round_trip(g in game()) {
        let text = format::game_to_string(&g);
        let back = format::parse_game(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(format::game_to_string(&back), text);
    }

    #[test]
    fn generated_documents_round_trip_and_repeat(seed in any::<u64>(), pick in 0usize..5) {
        let spec = [
            format!("seed={seed},family=chain,n=4,payoff=supermodular_then_transform"),
            format!("seed={seed},family=grid,dims=2x3,payoff=rejection,levels=3"),
            format!("seed={seed},family=diamond_mk,k=3"),
            format!("seed={seed},family=random_meet_join_closure,dims=3x3,payoff=supermodular_then_transform"),
            format!("seed={seed},family=mixed,max=4,players=2"),
        ][pick].parse::<GenSpec>().unwrap();
        prop_assert_eq!(spec.to_string().parse::<GenSpec>().unwrap(), spec.clone());
        let doc = generate(&spec).unwrap();
        let text = doc.to_canonical();
        prop_assert_eq!(generate(&spec).unwrap().to_canonical(), text.clone());
        let back = format::parse_document(&text).unwrap();
        prop_assert_eq!(back.to_canonical(), text);
        prop_assert_eq!(back, doc);
    }
}

#[test]
fn generated_lattices_are_lattices() {
    for seed in 0..50 {
        let spec: GenSpec = format!("seed={seed},family=random_meet_join_closure,dims=3x4")
            .parse()
            .unwrap();
        let Document::Lattice(l) = generate(&spec).unwrap() else {
            panic!("expected a lattice")
        };
        let doc = format::lattice_doc(&l);
        let again = format::lattice_from_doc(&doc).unwrap();
        assert_eq!(again, l);
    }
}
