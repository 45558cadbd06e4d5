//! Property tests over the built-in spaces and a few small posets.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;

use semimed::corpus;
use semimed::rules::lattice_filter_full;
use semimed::{
    check, co_majority, sponsorship_eval, tabulate, BinRel, BoundRule, FilterFamily, FilterForm,
    Flavor, GroundSet, MedianContext, OrderFilterN, Poset, Predicate, RelationSpace, RuleSpec,
    RuleTable, SpaceOptions,
};

fn space(flavor: Flavor, m: usize) -> RelationSpace {
    RelationSpace::new(flavor, GroundSet::letters(m).unwrap(), SpaceOptions::default()).unwrap()
}

struct Fixtures {
    spaces: Vec<RelationSpace>,
    chain: MedianContext,
    diamond: MedianContext,
}

fn fixtures() -> &'static Fixtures {
    static F: OnceLock<Fixtures> = OnceLock::new();
    F.get_or_init(|| {
        let diamond = Poset::from_fn(4, |i, j| i == j || i == 0 || j == 3).unwrap();
        Fixtures {
            spaces: vec![
                space(Flavor::TotalPreorder, 3),
                space(Flavor::TotalPreorder, 4),
                space(Flavor::WeakOrder, 3),
                space(Flavor::WeakTournament, 3),
                space(Flavor::StrictTournament, 3),
                space(Flavor::Reflexive, 3),
                space(Flavor::Irreflexive, 3),
            ],
            chain: MedianContext::new(Poset::chain(5)).unwrap(),
            diamond: MedianContext::new(diamond).unwrap(),
        }
    })
}

fn contexts() -> Vec<&'static MedianContext> {
    let f = fixtures();
    let mut v: Vec<&MedianContext> = f.spaces.iter().map(|s| s.ctx()).collect();
    v.push(&f.chain);
    v.push(&f.diamond);
    v
}

/// Least upper bound by scanning the order matrix.
fn lub(ctx: &MedianContext, a: usize, b: usize) -> usize {
    let n = ctx.len();
    let ub: Vec<usize> = (0..n).filter(|&u| ctx.leq(a, u) && ctx.leq(b, u)).collect();
    *ub.iter().find(|&&u| ub.iter().all(|&v| ctx.leq(u, v))).unwrap()
}

fn glb(ctx: &MedianContext, a: usize, b: usize) -> Option<usize> {
    let n = ctx.len();
    let lb: Vec<usize> = (0..n).filter(|&l| ctx.leq(l, a) && ctx.leq(l, b)).collect();
    lb.iter().copied().find(|&l| lb.iter().all(|&v| ctx.leq(v, l)))
}

fn pick(ctx: &MedianContext, ix: &[Index]) -> Vec<usize> {
    ix.iter().map(|i| i.index(ctx.len())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn median_identities(c in any::<Index>(), ix in prop::collection::vec(any::<Index>(), 5)) {
        let all = contexts();
        let ctx = all[c.index(all.len())];
        let e = pick(ctx, &ix);
        let (x, y, v, w, z) = (e[0], e[1], e[2], e[3], e[4]);
        let mu = |a, b, c| ctx.median(a, b, c).unwrap();
        prop_assert_eq!(mu(x, x, y), x);
        prop_assert_eq!(mu(mu(x, y, v), mu(x, y, w), z), mu(mu(v, w, z), x, y));
        for (a, b, c) in [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
            prop_assert_eq!(mu(a, b, c), mu(x, y, z));
        }
        // direct evaluation from the order matrix
        let jxy = lub(ctx, x, y);
        let jyz = lub(ctx, y, z);
        let jxz = lub(ctx, x, z);
        let direct = glb(ctx, jxy, jyz).and_then(|t| glb(ctx, t, jxz)).unwrap();
        prop_assert_eq!(mu(x, y, z), direct);
    }

    #[test]
    fn rank_is_a_valuation_and_metric(c in any::<Index>(), ix in prop::collection::vec(any::<Index>(), 3)) {
        let all = contexts();
        let ctx = all[c.index(all.len())];
        let e = pick(ctx, &ix);
        let (x, y, z) = (e[0], e[1], e[2]);
        let r = |a: usize| ctx.rank(a);
        if let Some(m) = ctx.meet(x, y) {
            prop_assert_eq!(r(x) + r(y), r(ctx.join(x, y)) + r(m));
            prop_assert_eq!(Some(m), glb(ctx, x, y));
        }
        prop_assert_eq!(ctx.join(x, y), lub(ctx, x, y));
        let d = |a, b| ctx.dist_rank(a, b).unwrap();
        prop_assert_eq!(d(x, y) == 0, x == y);
        prop_assert_eq!(d(x, y), d(y, x));
        prop_assert!(d(x, z) <= d(x, y) + d(y, z));
        prop_assert_eq!(d(x, y), ctx.cover_dist(x, y));
    }

    #[test]
    fn elements_are_meets_and_joins_of_irreducibles(c in any::<Index>(), i in any::<Index>()) {
        let all = contexts();
        let ctx = all[c.index(all.len())];
        let x = i.index(ctx.len());
        prop_assert_eq!(ctx.meet_of_set(&ctx.meet_irreducibles_above(x)).unwrap(), x);
        let below = ctx.join_irreducibles_below(x);
        match ctx.join_of_set(&below) {
            Some(j) => prop_assert_eq!(j, x),
            None => prop_assert_eq!(Some(x), ctx.bottom()),
        }
    }

    #[test]
    fn meet_irreducibles_are_meet_prime(c in any::<Index>(), ix in prop::collection::vec(any::<Index>(), 1..5)) {
        let all = contexts();
        let ctx = all[c.index(all.len())];
        let ys = pick(ctx, &ix);
        if let Ok(w) = ctx.meet_of_set(&ys) {
            for &m in ctx.meet_irreducibles() {
                if ctx.leq(w, m) && w != m {
                    prop_assert!(ys.iter().any(|&y| ctx.leq(y, m)));
                }
            }
        }
    }

    #[test]
    fn co_majority_is_majority_sponsorship(c in any::<Index>(), n in 1usize..6, ix in prop::collection::vec(any::<Index>(), 5)) {
        let all = contexts();
        let ctx = all[c.index(all.len())];
        let p = pick(ctx, &ix[..n]);
        let fam = FilterFamily::uniform_quota(ctx, n, (n + 2) / 2);
        prop_assert_eq!(co_majority(ctx, &p).unwrap(), sponsorship_eval(ctx, &fam, &p).unwrap());
        // and it always lies in the metric median set
        prop_assert!(ctx.metric_median_set(&p).unwrap().contains(&co_majority(ctx, &p).unwrap()));
    }

    #[test]
    fn lattice_offsets_on_basis_suffice(
        flavor in prop::sample::select(vec![Flavor::Reflexive, Flavor::Irreflexive]),
        f in any::<Index>(),
        offs in prop::collection::vec(prop::option::of(any::<Index>()), 8),
        ix in prop::collection::vec(any::<Index>(), 3),
        dual in any::<bool>(),
    ) {
        let s = fixtures().spaces.iter().find(|s| s.flavor() == flavor).unwrap();
        let filters = corpus::all_filters(3).unwrap();
        let filter = filters[f.index(filters.len())].clone();
        let offsets: BTreeMap<u32, usize> = filter
            .basis()
            .iter()
            .zip(&offs)
            .filter_map(|(&b, o)| o.map(|o| (b, o.index(s.len()))))
            .collect();
        let p = pick(s.ctx(), &ix);
        let (spec, form) = if dual {
            (RuleSpec::LatticeDualFilter { filter: filter.clone(), offsets: offsets.clone() }, FilterForm::JoinOfMeets)
        } else {
            (RuleSpec::LatticeFilter { filter: filter.clone(), offsets: offsets.clone() }, FilterForm::MeetOfJoins)
        };
        let basis_only = BoundRule::new(s, &spec, 3).unwrap().eval(&p).unwrap();
        let full = lattice_filter_full(s, form, &filter, &offsets, &p).unwrap();
        prop_assert_eq!(basis_only, full);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn failing_checks_ship_confirmed_witnesses(seed in any::<u64>(), k in 0usize..5) {
        let s = &fixtures().spaces[0];
        let mut t = corpus::random_tables(s.len(), 2, 1, seed).unwrap().remove(0).table;
        // Mix in structure so some predicates hold: copy a dictator on half the cube.
        let dict = tabulate(s.ctx(), &RuleSpec::Dictator { agent: 0 }, 2).unwrap();
        for idx in (0..t.outcomes.len()).filter(|i| i % 2 == seed as usize % 2) {
            t.outcomes[idx] = dict.outcomes[idx];
        }
        let which = Predicate::all()[k];
        let rep = check(s.ctx(), &t, which).unwrap();
        if let Some(w) = &rep.witness {
            prop_assert!(!rep.verdict);
            prop_assert!(w.confirm(s.ctx(), &t).unwrap());
        }
    }

    #[test]
    fn tabulation_matches_pointwise_evaluation(c in 0usize..7, ix in prop::collection::vec(any::<Index>(), 3)) {
        let s = &fixtures().spaces[c];
        let ctx = s.ctx();
        let spec = RuleSpec::CoMajority;
        let table: RuleTable = tabulate(ctx, &spec, 3).unwrap();
        let p = pick(ctx, &ix);
        prop_assert_eq!(table.get(&p), semimed::eval(ctx, &spec, &p).unwrap());
    }
}

#[test]
fn preorder_meets_are_intersections() {
    for m in [3, 4] {
        let s = space(Flavor::TotalPreorder, m);
        let ctx = s.ctx();
        for x in 0..s.len() {
            for y in 0..s.len() {
                let inter = s.element(x).intersection(s.element(y));
                match ctx.meet(x, y) {
                    Some(w) => assert_eq!(*s.element(w), inter, "{} ^ {}", s.render(x), s.render(y)),
                    None => assert!(s.index_of(&inter).is_none()),
                }
            }
        }
    }
}

#[test]
fn paired_spaces_are_isomorphic() {
    for (flavor, image) in [
        (Flavor::TotalPreorder, Flavor::WeakOrder),
        (Flavor::WeakTournament, Flavor::StrictTournament),
        (Flavor::Reflexive, Flavor::Irreflexive),
    ] {
        let s = space(flavor, 3);
        let iso = s.iso_map().unwrap();
        iso.verify(&s).unwrap();
        assert_eq!(iso.target.flavor(), image);
        assert_eq!(iso.target.len(), s.len());
    }
    assert!(space(Flavor::WeakOrder, 3).iso_map().is_err());
}

#[test]
fn space_sizes_match_counting_oracles() {
    // ordered Bell numbers by the recurrence a(m) = sum_k C(m, k) a(m - k)
    let mut fubini = vec![1u64];
    for m in 1..=4u64 {
        let mut binom = 1u64;
        let mut sum = 0;
        for k in 1..=m {
            binom = binom * (m - k + 1) / k;
            sum += binom * fubini[(m - k) as usize];
        }
        fubini.push(sum);
    }
    assert_eq!(space(Flavor::TotalPreorder, 3).len() as u64, fubini[3]);
    assert_eq!(space(Flavor::TotalPreorder, 4).len() as u64, fubini[4]);
    assert_eq!(space(Flavor::WeakTournament, 3).len(), 3usize.pow(3));
    assert_eq!(space(Flavor::StrictTournament, 3).len(), 3usize.pow(3));
    assert_eq!(space(Flavor::Reflexive, 3).len(), 1 << 6);
    assert_eq!(space(Flavor::Irreflexive, 3).len(), 1 << 6);
}

#[test]
fn threshold_filters_match_quota_rule() {
    let s = space(Flavor::TotalPreorder, 3);
    let ctx = s.ctx();
    for q in 2..=3 {
        let fam = FilterFamily::from_fn(ctx, |_| OrderFilterN::threshold(3, q));
        let a = tabulate(ctx, &RuleSpec::Sponsorship { filters: fam }, 3).unwrap();
        let b = tabulate(ctx, &RuleSpec::uniform_quota(ctx, q), 3).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn relation_lattice_elements_are_relations() {
    let s = space(Flavor::Reflexive, 3);
    assert!(s.elements().iter().all(BinRel::is_reflexive));
    let distinct: std::collections::BTreeSet<u64> = s.elements().iter().map(BinRel::bits).collect();
    assert_eq!(distinct.len(), 64);
}
