//! Exhaustive checks on small instances plus proptest invariants.

use std::collections::BTreeSet;

use dbtorus_core::dbseq::{shift_of, DbSequence};
use dbtorus_core::patterns::{elements_rank, kronecker_pattern, lemma_witness};
use dbtorus_core::torus::occurrence_counts;
use dbtorus_core::{
    gcd, is_prime, Element, FieldCtx, LinearForm, NTorus, Pattern, SubfieldPoly, Torus, TranslateOffset, UpdateTarget,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn nonzero(ctx: &FieldCtx) -> impl Iterator<Item = Element> + '_ {
    (1..ctx.size()).map(|i| ctx.from_index(i).unwrap())
}

#[test]
fn log_pow_round_trip() {
    for (p, n) in [(3, 4), (5, 3), (7, 2), (2, 9), (11, 1)] {
        let ctx = FieldCtx::new(p, n).unwrap();
        for x in nonzero(&ctx) {
            let k = ctx.log(&x).unwrap();
            assert_eq!(ctx.alpha_pow(k as i64), x);
            assert_eq!(ctx.mul(&x, &ctx.inv(&x).unwrap()), ctx.one());
        }
    }
}

#[test]
fn trace_tower_transitivity() {
    let ctx = FieldCtx::new(2, 12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let x = ctx.from_index(rng.gen_range(0..ctx.size())).unwrap();
        for m in [1, 2, 3, 4, 6] {
            let down = ctx.trace_to_subfield(m, &x).unwrap();
            assert!(ctx.in_subfield(m, &down));
            let abs = ctx.relative_trace(&down, m, 1).unwrap();
            assert_eq!(ctx.as_scalar(&abs), Some(ctx.trace(&x)));
        }
    }
}

#[test]
fn coordinate_map_is_injective() {
    for (p, n) in [(2, 6), (3, 4), (5, 2)] {
        let ctx = FieldCtx::new(p, n).unwrap();
        let lambda = ctx.alpha_pow(3);
        let form = LinearForm::new(&ctx, lambda).unwrap();
        let images: BTreeSet<Vec<u32>> = nonzero(&ctx).map(|x| ctx.coord_map(&form, &x)).collect();
        assert_eq!(images.len() as u64, ctx.group_order());
        assert!(!images.contains(&vec![0; n]));
    }
}

#[test]
fn unity_factors_multiply_out() {
    for (p, n, m) in [(2, 4, 2), (2, 6, 3), (2, 6, 2), (3, 4, 2), (2, 8, 4), (5, 2, 1)] {
        let ctx = FieldCtx::new(p, n).unwrap();
        let order = ctx.group_order();
        for t in (1..=order).filter(|t| order.is_multiple_of(*t)) {
            let factors = ctx.factor_unity(m, t).unwrap();
            let product = factors.iter().skip(1).fold(factors[0].poly.clone(), |acc, f| acc.mul(&ctx, &f.poly));
            let mut expected = vec![ctx.zero(); t as usize + 1];
            expected[0] = ctx.neg(&ctx.one());
            expected[t as usize] = ctx.one();
            assert_eq!(product.coeffs(), expected.as_slice(), "p={p} n={n} m={m} t={t}");
            for f in &factors {
                SubfieldPoly::new(&ctx, m, f.poly.coeffs().to_vec()).unwrap();
            }
        }
    }
}

#[test]
fn minimal_polys_vanish() {
    let ctx = FieldCtx::new(3, 4).unwrap();
    for x in nonzero(&ctx) {
        for m in [1, 2, 4] {
            let mp = ctx.minimal_poly(m, &x).unwrap();
            assert!(mp.eval(&ctx, &x).is_zero());
            assert_eq!((ctx.n() / m) % mp.degree(), 0);
        }
    }
}

#[test]
fn prime_field_windows_are_complete() {
    let cases = (2..=12).map(|n| (2, n)).chain((2..=6).map(|n| (3, n))).chain([(5, 3), (7, 2)]);
    for (p, n) in cases {
        let ctx = FieldCtx::new(p, n).unwrap();
        let seq = DbSequence::new(&ctx, 1, &ctx.one()).unwrap();
        assert_eq!(seq.len() as u64, ctx.group_order());
        assert!(seq.satisfies_recurrence(&ctx), "p={p} n={n}");
        assert!(seq.windows_complete(), "p={p} n={n}");
    }
}

#[test]
fn tower_windows_are_complete() {
    for (p, n, m) in [(2, 4, 2), (2, 6, 2), (2, 6, 3), (3, 4, 2), (2, 8, 4)] {
        let ctx = FieldCtx::new(p, n).unwrap();
        let seq = DbSequence::new(&ctx, m, &ctx.alpha_pow(4)).unwrap();
        assert!(seq.satisfies_recurrence(&ctx));
        assert!(seq.windows_complete());
        let full = seq.lift_to_full().unwrap();
        let wins: BTreeSet<Vec<Element>> =
            (0..full.len()).map(|i| (0..seq.window()).map(|k| full[(i + k) % full.len()].clone()).collect()).collect();
        assert_eq!(wins.len() as u64, ctx.size());
    }
}

#[test]
fn lambda_selects_the_shift() {
    for (p, n, m) in [(2, 4, 1), (2, 4, 2), (3, 3, 1), (2, 6, 3)] {
        let ctx = FieldCtx::new(p, n).unwrap();
        let base = DbSequence::new(&ctx, m, &ctx.one()).unwrap();
        let mut shifts = BTreeSet::new();
        for lambda in nonzero(&ctx) {
            let seq = DbSequence::new(&ctx, m, &lambda).unwrap();
            let r = shift_of(base.symbols(), seq.symbols()).unwrap();
            assert_eq!(r as u64, ctx.log(&lambda).unwrap());
            shifts.insert(r);
        }
        assert_eq!(shifts.len() as u64, ctx.group_order());
    }
}

#[test]
fn binary_lift_windows() {
    for n in 2..=10 {
        let ctx = FieldCtx::new(2, n).unwrap();
        let seq = DbSequence::new(&ctx, 1, &ctx.one()).unwrap();
        let strip = seq.to_strip(&ctx, true).unwrap();
        assert_eq!(strip.cols() as u64, ctx.size());
        let bits = strip.row(0);
        // every n-bit word, zero included, appears once cyclically
        let cyclic: BTreeSet<Vec<u32>> =
            (0..bits.len()).map(|i| (0..n).map(|k| bits[(i + k) % bits.len()]).collect()).collect();
        assert_eq!(cyclic.len() as u64, ctx.size());
    }
}

#[test]
fn basis_test_agrees_with_sampling_on_all_subsets() {
    let ctx = FieldCtx::new(2, 4).unwrap();
    let torus = Torus::new(&ctx, 3, 5, &LinearForm::trace(&ctx)).unwrap();
    let cells: Vec<(usize, usize)> = (0..3).flat_map(|i| (0..5).map(move |j| (i, j))).collect();
    let (mut total, mut bases) = (0, 0);
    for a in 0..15 {
        for b in a + 1..15 {
            for c in b + 1..15 {
                for d in c + 1..15 {
                    let p = Pattern::new([cells[a], cells[b], cells[c], cells[d]]).unwrap();
                    let basis = torus.is_basis(&p).unwrap();
                    assert_eq!(basis, torus.verify_sampling(&p).unwrap(), "{:?}", p.cells());
                    total += 1;
                    bases += basis as usize;
                }
            }
        }
    }
    assert_eq!((total, bases), (1365, 840));
}

#[test]
fn basis_test_agrees_with_sampling_randomly() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (p, n, s, t) in [(2, 6, 7, 9), (3, 3, 2, 13), (2, 8, 15, 17), (2, 6, 63, 1)] {
        let ctx = FieldCtx::new(p, n).unwrap();
        let torus = Torus::new(&ctx, s, t, &LinearForm::new(&ctx, ctx.alpha_pow(2)).unwrap()).unwrap();
        let all: Vec<(usize, usize)> = (0..s).flat_map(|i| (0..t).map(move |j| (i, j))).collect();
        for _ in 0..40 {
            let pick: Vec<(usize, usize)> = all.choose_multiple(&mut rng, n).copied().collect();
            let pat = Pattern::new(pick).unwrap();
            assert_eq!(torus.is_basis(&pat).unwrap(), torus.verify_sampling(&pat).unwrap());
        }
    }
}

#[test]
fn decode_round_trips() {
    for (p, n, s, t, m) in [(2, 4, 3, 5, Some(2)), (2, 6, 7, 9, Some(3)), (2, 8, 15, 17, Some(4)), (3, 4, 5, 16, None)]
    {
        let ctx = FieldCtx::new(p, n).unwrap();
        let torus = Torus::new(&ctx, s, t, &LinearForm::new(&ctx, ctx.alpha_pow(1)).unwrap()).unwrap();
        let pattern = match m {
            Some(m) => kronecker_pattern(&ctx, m).unwrap(),
            None => Pattern::new((0..n).map(|j| (0, j))).unwrap(),
        };
        let cert = torus.certificate(&pattern).unwrap();
        let table = torus.translate_table(&pattern).unwrap();
        assert_eq!(table.len(), s * t);
        for a in 0..s {
            for b in 0..t {
                let values = torus.read_pattern(&pattern, TranslateOffset::new(a, b));
                assert_eq!(torus.decode(&cert, &values).unwrap(), TranslateOffset::new(a, b));
                assert_eq!(table[&values], TranslateOffset::new(a, b));
            }
        }
    }
}

fn check_updates(torus: &Torus, pattern: &Pattern) {
    let (s, t) = (torus.s(), torus.t());
    for shift in [(0, 1), (0, -1), (1, 0), (-1, 0), (2, 3)] {
        let full = torus.update_matrix(pattern, shift, &UpdateTarget::Full).unwrap();
        let partial = torus.update_matrix(pattern, shift, &UpdateTarget::NewCells).unwrap();
        let di = shift.0.rem_euclid(s as i64) as usize;
        let dj = shift.1.rem_euclid(t as i64) as usize;
        for a in 0..s {
            for b in 0..t {
                let here = torus.read_pattern(pattern, TranslateOffset::new(a, b));
                let there = torus.read_pattern(pattern, TranslateOffset::new(a + di, b + dj));
                assert_eq!(full.apply(&here), there);
                assert_eq!(full.advance(&here).unwrap(), there);
                assert_eq!(partial.advance(&here).unwrap(), there);
            }
        }
    }
}

#[test]
fn update_rules_match_direct_reads() {
    let g16 = FieldCtx::new(2, 4).unwrap();
    let t16 = Torus::new(&g16, 3, 5, &LinearForm::trace(&g16)).unwrap();
    check_updates(&t16, &kronecker_pattern(&g16, 2).unwrap());
    let g64 = FieldCtx::new(2, 6).unwrap();
    let t64 = Torus::new(&g64, 7, 9, &LinearForm::trace(&g64)).unwrap();
    check_updates(&t64, &kronecker_pattern(&g64, 3).unwrap());
    let g81 = FieldCtx::new(3, 4).unwrap();
    let t81 = Torus::new(&g81, 5, 16, &LinearForm::trace(&g81)).unwrap();
    check_updates(&t81, &Pattern::new((0..4).map(|j| (0, j))).unwrap());
}

#[test]
fn update_rules_compose() {
    let ctx = FieldCtx::new(2, 6).unwrap();
    let torus = Torus::new(&ctx, 7, 9, &LinearForm::trace(&ctx)).unwrap();
    let pattern = kronecker_pattern(&ctx, 3).unwrap();
    let m = |d| torus.update_matrix(&pattern, d, &UpdateTarget::Full).unwrap().coeffs;
    for (d1, d2) in [((0, 1), (1, 0)), ((2, -3), (-1, 5)), ((0, 1), (0, 1))] {
        let both = m((d1.0 + d2.0, d1.1 + d2.1));
        assert_eq!(both, m(d2).mul(&m(d1)));
    }
    let other = Pattern::new([(0, 0), (0, 5), (1, 1), (3, 2), (4, 4), (6, 8)]).unwrap();
    assert!(torus.is_basis(&other).unwrap());
    let cross = torus.update_matrix(&pattern, (1, 2), &UpdateTarget::Cells(other.clone())).unwrap();
    for a in 0..7 {
        for b in 0..9 {
            let here = torus.read_pattern(&pattern, TranslateOffset::new(a, b));
            let there = torus.read_pattern(&other, TranslateOffset::new(a + 1, b + 2));
            assert_eq!(cross.apply(&here), there);
        }
    }
}

#[test]
fn kronecker_patterns_are_bases() {
    let mut checked = 0;
    for p in (2u32..=256).filter(|&p| is_prime(p as u64)) {
        let mut n = 1;
        while (p as u64).pow(n as u32) <= 1 << 16 {
            let ctx = FieldCtx::new(p, n).unwrap();
            let order = ctx.group_order();
            for m in (1..=n).filter(|m| n % m == 0) {
                let s = ctx.subfield_size(m) - 1;
                let t = order / s;
                if gcd(s, t) != 1 {
                    assert!(kronecker_pattern(&ctx, m).is_err());
                    continue;
                }
                let pattern = kronecker_pattern(&ctx, m).unwrap();
                let elements: Vec<Element> = pattern
                    .cells()
                    .iter()
                    .map(|&(i, j)| ctx.alpha_pow(((t * i as u64 + s * j as u64) % order) as i64))
                    .collect();
                assert_eq!(elements_rank(&ctx, &elements), n, "p={p} n={n} m={m}");
                checked += 1;
            }
            n += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn occurrence_counts_match_classification() {
    for (p, n, m) in
        [(2, 4, 2), (2, 6, 3), (2, 8, 4), (2, 9, 3), (2, 10, 5), (3, 3, 1), (3, 6, 2), (5, 3, 1), (2, 5, 1)]
    {
        let ctx = FieldCtx::new(p, n).unwrap();
        let s = (ctx.subfield_size(m) - 1) as usize;
        let t = ctx.group_order() as usize / s;
        let counts = occurrence_counts(&ctx, m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for k in [0, rng.gen_range(1..ctx.group_order())] {
            let form = LinearForm::new(&ctx, ctx.alpha_pow(k as i64)).unwrap();
            let torus = Torus::new(&ctx, s, t, &form).unwrap();
            let report = torus.classify_columns(m).unwrap();
            assert_eq!(report.counts.values().sum::<usize>() + report.zero_columns, t);
            if k == 0 {
                assert_eq!(report.counts, counts.counts, "p={p} n={n} m={m}");
                assert_eq!(report.zero_columns, counts.zero_columns);
            }
        }
    }
}

#[test]
fn extended_grid_reads_match_torus() {
    let ctx = FieldCtx::new(2, 6).unwrap();
    let torus = Torus::new(&ctx, 7, 9, &LinearForm::trace(&ctx)).unwrap();
    let pattern = Pattern::new([(0, 0), (0, 3), (2, 1), (1, 4), (2, 2), (0, 1)]).unwrap();
    let grid = torus.extend_array(&pattern);
    for a in 0..7 {
        for b in 0..9 {
            for &(i, j) in pattern.cells() {
                assert_eq!(grid.get(a + i, b + j), torus.value(a + i, b + j));
            }
        }
    }
}

#[test]
fn lemma_witnesses_exist() {
    let ctx = FieldCtx::new(2, 8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..100 {
        let dv = rng.gen_range(1..8);
        let dw = rng.gen_range(1..=8 - dv);
        let v: Vec<Element> = (0..dv).map(|_| ctx.from_index(rng.gen_range(1..256)).unwrap()).collect();
        let w: Vec<Element> = (0..dw).map(|_| ctx.from_index(rng.gen_range(1..256)).unwrap()).collect();
        let k = lemma_witness(&ctx, &v, &w).unwrap().expect("witness");
        let z = ctx.alpha_pow(k as i64);
        let mut joined = v.clone();
        joined.extend(w.iter().map(|x| ctx.mul(&z, x)));
        assert_eq!(elements_rank(&ctx, &joined), elements_rank(&ctx, &v) + elements_rank(&ctx, &w));
    }
}

#[test]
fn ntorus_axis_permutation() {
    let ctx = FieldCtx::new(2, 6).unwrap();
    let form = LinearForm::trace(&ctx);
    let a = NTorus::new(&ctx, &[7, 9], &form).unwrap();
    let b = NTorus::new(&ctx, &[9, 7], &form).unwrap();
    for i in 0..7 {
        for j in 0..9 {
            assert_eq!(a.value(&[i, j]), b.value(&[j, i]));
        }
    }
}

#[test]
fn ntorus_marginal_collapse() {
    let ctx = FieldCtx::new(2, 12).unwrap();
    let form = LinearForm::trace(&ctx);
    let three = NTorus::new(&ctx, &[5, 7, 117], &form).unwrap();
    let two = NTorus::new(&ctx, &[5, 819], &form).unwrap();
    let planar = Torus::new(&ctx, 5, 819, &form).unwrap();
    assert_eq!(two.values(), planar.values());
    for i1 in 0..5 {
        for i2 in 0..7 {
            for i3 in 0..117 {
                let j = (i2 * 117 + i3 * 7) % 819;
                assert_eq!(three.value(&[i1, i2, i3]), two.value(&[i1, j]));
            }
        }
    }
}

#[test]
fn ntorus_sampling_matches_rank_test() {
    let ctx = FieldCtx::new(2, 6).unwrap();
    let nt = NTorus::new(&ctx, &[7, 9], &LinearForm::trace(&ctx)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let cells: BTreeSet<Vec<usize>> =
            std::iter::repeat_with(|| vec![rng.gen_range(0..7), rng.gen_range(0..9)]).take(6).collect();
        if cells.len() < 6 {
            continue;
        }
        let cells: Vec<Vec<usize>> = cells.into_iter().collect();
        assert_eq!(nt.is_basis(&cells).unwrap(), nt.verify_sampling(&cells).unwrap());
    }
    let g16 = FieldCtx::new(2, 4).unwrap();
    let small = NTorus::new(&g16, &[3, 5], &LinearForm::trace(&g16)).unwrap();
    let kron: Vec<Vec<usize>> = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
    assert!(small.verify_sampling(&kron).unwrap());
    let dependent: Vec<Vec<usize>> = vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1]];
    assert!(!small.verify_sampling(&dependent).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms_gf3_5(a in 0u64..243, b in 0u64..243, c in 0u64..243) {
        let ctx = FieldCtx::new(3, 5).unwrap();
        let (a, b, c) = (ctx.from_index(a).unwrap(), ctx.from_index(b).unwrap(), ctx.from_index(c).unwrap());
        prop_assert_eq!(ctx.mul(&a, &ctx.add(&b, &c)), ctx.add(&ctx.mul(&a, &b), &ctx.mul(&a, &c)));
        prop_assert_eq!(ctx.frobenius(&ctx.mul(&a, &b)), ctx.mul(&ctx.frobenius(&a), &ctx.frobenius(&b)));
        prop_assert_eq!(ctx.trace(&ctx.add(&a, &b)), (ctx.trace(&a) + ctx.trace(&b)) % 3);
        prop_assert_eq!(ctx.frobenius_pow(&a, 5), a);
    }

    #[test]
    fn forms_round_trip_through_weights(k in 0i64..728) {
        let ctx = FieldCtx::new(3, 6).unwrap();
        let form = LinearForm::new(&ctx, ctx.alpha_pow(k)).unwrap();
        let again = LinearForm::from_weights(&ctx, form.weights()).unwrap();
        prop_assert_eq!(again.lambda(), form.lambda());
    }

    #[test]
    fn translate_round_trip(a in 0usize..7, b in 0usize..9, cells in proptest::collection::btree_set((0usize..7, 0usize..9), 1..8)) {
        let p = Pattern::new(cells).unwrap();
        let moved = p.translate(TranslateOffset::new(a, b), 7, 9);
        let back = moved.translate(TranslateOffset::new(7 - a, 9 - b), 7, 9);
        prop_assert_eq!(back, p.clone());
        prop_assert_eq!(moved.len(), p.len());
    }
}
