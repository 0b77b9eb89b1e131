use caterpillar_broadcast::broadcast::{
    canonical_broadcast, improve_stem_once, is_independent, is_maximal_independent,
    is_valid_broadcast,
};
use caterpillar_broadcast::construct::{construct, construct_witness};
use caterpillar_broadcast::formula::{beta_b, beta_b_fastpath, beta_star, Instance};
use caterpillar_broadcast::harness::random_tree;
use caterpillar_broadcast::oracle::{exact_beta_b, OracleOptions};
use caterpillar_broadcast::pattern::{
    check_overlaps, find_occurrences, FormulaOccurrences, Occurrence, Pattern,
};
use caterpillar_broadcast::tree::{classify_spine, has_adjacent_trunks};
use caterpillar_broadcast::{Broadcast, Caterpillar, TreeMetrics, Variant, VertexRole};
use proptest::prelude::*;

/// λ-sequences with positive ends; interior zeros may be adjacent.
fn any_lambdas(max_k: usize, max_l: u32) -> impl Strategy<Value = Vec<u32>> {
    (1..=max_k).prop_flat_map(move |k| {
        (
            1..=max_l,
            prop::collection::vec(0..=max_l, k - 1),
            1..=max_l,
        )
            .prop_map(|(a, mid, b)| {
                let mut v = vec![a];
                v.extend(mid);
                v.push(b);
                v
            })
    })
}

/// Caterpillars without adjacent trunks: a zero right after a zero becomes 1.
fn supported(max_k: usize, max_l: u32) -> impl Strategy<Value = Caterpillar> {
    any_lambdas(max_k, max_l).prop_map(|mut l| {
        for i in 1..l.len() {
            if l[i] == 0 && l[i - 1] == 0 {
                l[i] = 1;
            }
        }
        Caterpillar::new(l).unwrap()
    })
}

fn any_caterpillar(max_k: usize, max_l: u32) -> impl Strategy<Value = Caterpillar> {
    any_lambdas(max_k, max_l).prop_map(|l| Caterpillar::new(l).unwrap())
}

fn mirror(o: &Occurrence, k: usize) -> (usize, usize) {
    (k - o.end, k - o.start)
}

const PATTERNS: &[&str] = &[
    "10",
    "211",
    "[1",
    "3]",
    "2+]",
    "2111+",
    "0{2,3}",
    "1+1+1+",
    "1+0(20)+1+",
    "1+2-(02-)+1+",
    "02-(02-)*0",
    "[2-(02-)*0",
    "02-(02-)*]",
    "{1+,[}1{1+,]}",
];

/// `p` with its repetition group written out `r` times.
fn unrolled(p: &Pattern, r: usize) -> Pattern {
    let mut q = p.clone();
    if let Some(rep) = q.repeat.take() {
        for _ in 0..r {
            q.prefix.push(rep.first.clone());
            q.prefix.push(rep.second.clone());
        }
        q.prefix.append(&mut q.suffix);
    }
    q
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn diameter_is_length_plus_two(ct in any_caterpillar(9, 4)) {
        let m = ct.metrics();
        prop_assert_eq!(m.diameter() as usize, ct.length() + 2);
        prop_assert_eq!(canonical_broadcast(&ct).cost(), 2 * (m.diameter() as u64 - 1));
    }

    #[test]
    fn distances_are_tree_metric(ct in any_caterpillar(6, 3)) {
        let m = ct.metrics();
        let t = m.tree();
        let n = m.vertex_count();
        for u in 0..n {
            prop_assert_eq!(m.dist(u, u), 0);
            for w in 0..n {
                prop_assert_eq!(m.dist(u, w), m.dist(w, u));
                if u != w {
                    // The first step of the u–w path.
                    let x = t.neighbors(u).iter().copied().find(|&x| m.dist(x, w) + 1 == m.dist(u, w));
                    prop_assert!(x.is_some());
                    let x = x.unwrap();
                    prop_assert_eq!(m.dist(u, w), m.dist(u, x) + m.dist(x, w));
                }
            }
        }
    }

    #[test]
    fn reversal_keeps_structure(ct in any_caterpillar(9, 4)) {
        let r = ct.reversed();
        let (a, b) = (classify_spine(&ct), classify_spine(&r));
        prop_assert_eq!((a.lambda_total, a.tau, a.n1), (b.lambda_total, b.tau, b.n1));
        let mut kinds = b.kinds.clone();
        kinds.reverse();
        prop_assert_eq!(a.kinds, kinds);
        prop_assert_eq!(has_adjacent_trunks(&ct), has_adjacent_trunks(&r));
        prop_assert_eq!(ct.to_tree().degree_sequence(), r.to_tree().degree_sequence());
    }

    #[test]
    fn reversal_keeps_beta(ct in supported(9, 4)) {
        let r = ct.reversed();
        for v in [Variant::Effective, Variant::AsWritten] {
            prop_assert_eq!(beta_b(&ct, v).unwrap().value, beta_b(&r, v).unwrap().value);
        }
        prop_assert_eq!(
            construct_witness(&ct, Variant::Effective).unwrap().cost,
            construct_witness(&r, Variant::Effective).unwrap().cost
        );
    }

    #[test]
    fn restriction_stays_independent(ct in supported(7, 3), a in 0usize..8, len in 1usize..8) {
        let k = ct.length();
        let a = a.min(k - 1);
        let b = (a + len).min(k);
        // Sub-caterpillars need leaves at both ends of their spine.
        prop_assume!(ct.lambda(a) > 0 && ct.lambda(b) > 0);
        let h = Caterpillar::new(ct.lambdas()[a..=b].to_vec()).unwrap();
        let hm = h.metrics();
        let m = ct.metrics();
        let mut fs = vec![construct_witness(&ct, Variant::Effective).unwrap().broadcast, canonical_broadcast(&ct)];
        if ct.vertex_count() <= 22 {
            fs.push(exact_beta_b(&m, &OracleOptions::default()).unwrap().witness);
        }
        for f in fs {
            let mut fh = Broadcast::zeros(h.vertex_count());
            let mut capped = Broadcast::zeros(h.vertex_count());
            let mut fits = true;
            for v in 0..h.vertex_count() {
                let role = match h.role(v) {
                    VertexRole::Spine(i) => VertexRole::Spine(i + a),
                    VertexRole::Leaf(i, j) => VertexRole::Leaf(i + a, j),
                };
                let x = f.get(ct.vertex_of(role).unwrap());
                fits &= x <= hm.eccentricity(v);
                fh.set(v, x);
                capped.set(v, x.min(hm.eccentricity(v)));
            }
            prop_assert!(is_independent(&hm, &capped).unwrap());
            if fits {
                prop_assert!(is_independent(&hm, &fh).unwrap());
            }
        }
    }

    #[test]
    fn improve_adds_exactly_one(ct in supported(7, 3), pick in 0usize..64) {
        let m = ct.metrics();
        let stems: Vec<usize> = (0..=ct.length()).filter(|&i| !ct.is_trunk(i)).collect();
        let s = stems[pick % stems.len()];
        let mut single = Broadcast::zeros(ct.vertex_count());
        single.set(s, m.eccentricity(s));
        // A constructed broadcast with one leaf value pulled back onto its stem.
        let mut pulled = construct_witness(&ct, Variant::Effective).unwrap().broadcast;
        if let Some(j) = (1..=ct.lambda(s) as usize).find(|&j| pulled.get(ct.leaf_vertex(s, j)) >= 2) {
            let leaf = ct.leaf_vertex(s, j);
            let x = pulled.get(leaf);
            for j in 1..=ct.lambda(s) as usize {
                pulled.set(ct.leaf_vertex(s, j), 0);
            }
            pulled.set(s, x - 1);
        }
        prop_assert!(is_independent(&m, &single).unwrap());
        for b in [single, pulled] {
            // Pulling a value back can bring the stem into another broadcast's range.
            if !is_independent(&m, &b).unwrap() {
                continue;
            }
            if let Some(next) = improve_stem_once(&m, &b) {
                prop_assert!(is_valid_broadcast(&m, &next).unwrap());
                prop_assert!(is_independent(&m, &next).unwrap());
                prop_assert_eq!(next.cost(), b.cost() + 1);
            }
        }
    }

    #[test]
    fn occurrences_are_maximal_and_mirror(ct in any_caterpillar(9, 3), which in 0usize..PATTERNS.len()) {
        let p = Pattern::parse(PATTERNS[which]).unwrap();
        let k = ct.length();
        let occ = find_occurrences(&ct, &p);
        for o in &occ {
            if p.repeat.is_some() {
                let longer = unrolled(&p, o.repetitions + 1);
                prop_assert!(find_occurrences(&ct, &longer).iter().all(|q| q.start != o.start));
            }
        }
        let mut here: Vec<_> = occ.iter().map(|o| mirror(o, k)).collect();
        here.sort();
        let there: Vec<_> = find_occurrences(&ct.reversed(), &p.mirrored())
            .iter()
            .map(|o| (o.start, o.end))
            .collect();
        prop_assert_eq!(here, there);
    }

    #[test]
    fn formula_families_do_not_overlap(ct in supported(10, 3)) {
        let report = check_overlaps(&ct, &FormulaOccurrences::find(&ct));
        prop_assert!(report.is_clean(), "{:?}", report);
    }

    #[test]
    fn formula_bounds(ct in supported(10, 4)) {
        let eff = beta_star(&ct, Variant::Effective).unwrap();
        let aw = beta_star(&ct, Variant::AsWritten).unwrap();
        let anchored = FormulaOccurrences::find(&ct).anchored_count() as u32;
        prop_assert!(eff.beta_star() <= aw.beta_star());
        prop_assert!(aw.beta_star() <= eff.beta_star() + anchored);
        let canonical = 2 * (ct.diameter() - 1);
        let bb = beta_b(&ct, Variant::Effective).unwrap().value;
        prop_assert!(bb >= canonical);
        if let Some((value, _)) = beta_b_fastpath(Instance::Caterpillar(&ct)) {
            prop_assert_eq!(value, bb);
        }
    }

    #[test]
    fn construction_steps(ct in supported(10, 4)) {
        let m = ct.metrics();
        let t = construct(&ct).unwrap();
        for f in &t.steps {
            prop_assert!(is_valid_broadcast(&m, f).unwrap());
            prop_assert!(is_independent(&m, f).unwrap());
            prop_assert!((0..=ct.length()).all(|i| ct.is_trunk(i) || f.get(i) == 0));
        }
        prop_assert!(t.costs.windows(2).all(|w| w[0] <= w[1]));
        let b = beta_star(&ct, Variant::Effective).unwrap();
        prop_assert_eq!(
            t.deltas(),
            [b.singles_term as i64, b.alpha1_term as i64, b.alpha2_total() as i64]
        );
        prop_assert_eq!(t.costs[3], b.beta_star() as u64);
        // Steps 2–4 never touch the same leaf twice.
        let mut touched = vec![false; ct.vertex_count()];
        for w in t.steps.windows(2) {
            for (v, seen) in touched.iter_mut().enumerate().skip(ct.length() + 1) {
                if w[0].get(v) != w[1].get(v) {
                    prop_assert!(!*seen, "leaf {} rewritten twice", ct.role(v));
                    *seen = true;
                }
            }
        }
    }

    #[test]
    fn constructor_is_sound(ct in supported(6, 3)) {
        let m = ct.metrics();
        let w = construct_witness(&ct, Variant::Effective).unwrap();
        let r = exact_beta_b(&m, &OracleOptions::default()).unwrap();
        prop_assert!(w.cost <= r.optimum);
        prop_assert!(r.optimum >= 2 * (ct.diameter() as u64 - 1));
    }

    #[test]
    fn pruning_is_exact(ct in any_caterpillar(5, 3)) {
        let m = ct.metrics();
        prop_assume!(m.vertex_count() <= 14);
        let a = exact_beta_b(&m, &OracleOptions::default()).unwrap();
        let b = exact_beta_b(&m, &OracleOptions::unpruned()).unwrap();
        prop_assert_eq!(a.optimum, b.optimum);
    }

    #[test]
    fn oracle_on_random_trees(n in 2usize..=14, seed in any::<u64>()) {
        let m = TreeMetrics::new(random_tree(n, seed).unwrap());
        let a = exact_beta_b(&m, &OracleOptions::default()).unwrap();
        prop_assert!(a.optimum >= 2 * (m.diameter() as u64 - 1));
        prop_assert_eq!(a.witness.cost(), a.optimum);
        prop_assert!(is_maximal_independent(&m, &a.witness).unwrap());
        let b = exact_beta_b(&m, &OracleOptions::unpruned()).unwrap();
        prop_assert_eq!(a.optimum, b.optimum);
    }
}
