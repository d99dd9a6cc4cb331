mod common;

use std::sync::{Arc, OnceLock};

use eigencone::weyl::parse_word;
use eigencone::{borel_weil_bott, BwbClass, GroupType, RootSubset, Weight, WeylGroup};
use proptest::prelude::*;

use common::Reference;

const TYPES: [&str; 6] = ["A2", "B2", "G2", "A3", "B3", "C3"];

fn groups() -> &'static Vec<(Arc<WeylGroup>, Reference)> {
    static G: OnceLock<Vec<(Arc<WeylGroup>, Reference)>> = OnceLock::new();
    G.get_or_init(|| {
        TYPES
            .iter()
            .map(|t| {
                let g = Arc::new(WeylGroup::for_type(t.parse::<GroupType>().unwrap()).unwrap());
                let r = Reference::new(t, g.root_system());
                (g, r)
            })
            .collect()
    })
}

fn weight_strategy(rank: usize) -> impl Strategy<Value = Weight> {
    proptest::collection::vec(-4i64..=4, rank).prop_map(Weight::new)
}

/// (group index, two element indices, a weight)
fn case() -> impl Strategy<Value = (usize, usize, usize, Weight)> {
    (0..TYPES.len()).prop_flat_map(|k| {
        let (g, _) = &groups()[k];
        let n = g.order();
        (Just(k), 0..n, 0..n, weight_strategy(g.root_system().rank()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn inversion_set_size_is_length((k, u, _v, _l) in case()) {
        let (g, r) = &groups()[k];
        let e = g.element(u);
        prop_assert_eq!(e.inversions().len(), e.length());
        prop_assert_eq!(e.inversions().bits(), r.inversions(e.word()));
    }

    #[test]
    fn longest_element_translates((k, u, _v, _l) in case()) {
        let (g, _) = &groups()[k];
        let n = g.max_length();
        let w0 = g.longest_index();
        let comp = g.element(u).inversions().complement(n);
        prop_assert_eq!(g.element(g.mul_index(w0, u)).inversions(), comp);
        prop_assert_eq!(
            g.element(g.mul_index(u, w0)).inversions(),
            comp.permuted(g.neg_w0_permutation())
        );
    }

    #[test]
    fn product_matches_concatenated_words((k, u, v, _l) in case()) {
        let (g, r) = &groups()[k];
        let (eu, ev) = (g.element(u), g.element(v));
        let uv = g.element(g.mul_index(u, v));
        let mut word = eu.word().to_vec();
        word.extend_from_slice(ev.word());
        prop_assert_eq!(uv.inversions().bits(), r.inversions(&word));
        prop_assert!(uv.length() <= eu.length() + ev.length());
        prop_assert_eq!((uv.length() + eu.length() + ev.length()) % 2, 0);
        // Phi_{uv} = Phi_v xor |v^{-1} Phi_u|
        let vinv = g.inverse_index(v);
        let mut pulled = RootSubset::empty();
        for k in eu.inversions().iter() {
            let img = g.element(vinv).act(&g.root_system().positive_roots_fw()[k]).unwrap();
            let (idx, _) = g.root_system().root_index_fw(&img).expect("image of a root is a root");
            pulled.insert(idx);
        }
        let expected = RootSubset::from_bits(ev.inversions().bits() ^ pulled.bits());
        prop_assert_eq!(uv.inversions(), expected);
    }

    #[test]
    fn action_matches_reference((k, u, _v, lam) in case()) {
        let (g, r) = &groups()[k];
        let e = g.element(u);
        let image = e.act(&lam).unwrap();
        prop_assert_eq!(image.coords(), &r.act_weight(e.word(), lam.coords())[..]);
    }

    #[test]
    fn dot_action_composes((k, u, v, lam) in case()) {
        let (g, _) = &groups()[k];
        let uv = g.element(g.mul_index(u, v));
        let lhs = uv.dot(&lam).unwrap();
        let rhs = g.element(u).dot(&g.element(v).dot(&lam).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bwb_inverts_dot((k, u, _v, lam) in case()) {
        let (g, _) = &groups()[k];
        let dominant = Weight::new(lam.coords().iter().map(|c| c.abs()).collect());
        let e = g.element(u);
        let chi = e.dot(&dominant).unwrap();
        prop_assert_eq!(
            borel_weil_bott(g.root_system(), &chi).unwrap(),
            BwbClass::Nonzero { degree: e.length(), weight: dominant }
        );
    }

    #[test]
    fn star_is_an_involution((k, _u, _v, lam) in case()) {
        let (g, r) = &groups()[k];
        let dominant = Weight::new(lam.coords().iter().map(|c| c.abs()).collect());
        let star = g.weight_star(&dominant).unwrap();
        prop_assert!(star.is_dominant());
        prop_assert_eq!(star.coords(), &r.dual(dominant.coords())[..]);
        prop_assert_eq!(g.weight_star(&star).unwrap(), dominant);
    }

    #[test]
    fn word_format_round_trips((k, u, _v, _l) in case()) {
        let (g, _) = &groups()[k];
        let e = g.element(u);
        let s = e.word_string();
        prop_assert_eq!(g.parse_element(&s).unwrap(), u);
        let parsed: Vec<u8> = parse_word(&s).unwrap().into_iter().map(|i| i as u8).collect();
        prop_assert_eq!(&parsed[..], e.word());
    }
}

#[test]
fn exceptional_group_orders() {
    for (t, n, top) in [("F4", 1152, 24), ("E6", 51840, 36)] {
        let g = WeylGroup::for_type(t.parse().unwrap()).unwrap();
        assert_eq!(g.order(), n, "{t}");
        assert_eq!(g.longest_element().length(), top, "{t}");
        assert_eq!(g.element(g.longest_index()).inversions().len(), top, "{t}");
    }
}

#[test]
fn longest_element_is_unique_maximum() {
    for (g, _) in groups() {
        let top = g.max_length();
        let tops: Vec<usize> = (0..g.order()).filter(|&w| g.element(w).length() == top).collect();
        assert_eq!(tops, vec![g.longest_index()]);
        assert_eq!(g.inverse_index(g.longest_index()), g.longest_index());
    }
}
