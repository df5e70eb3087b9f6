//! Fixed reference values for GF(16), GF(64) and GF(256).

use dbtorus_core::dbseq::{feedback_vector, lfsr_extend, DbSequence};
use dbtorus_core::patterns::kronecker_pattern;
use dbtorus_core::torus::{occurrence_counts, quadratic_criterion, ColumnLabel};
use dbtorus_core::{Element, Error, FieldCtx, LinearForm, Pattern, Torus, TranslateOffset, UpdateTarget};

fn gf16() -> FieldCtx {
    FieldCtx::new(2, 4).unwrap()
}

fn cells(list: &[(usize, usize)]) -> Pattern {
    Pattern::new(list.iter().copied()).unwrap()
}

fn grid(rows: &[&str]) -> Vec<Vec<u32>> {
    rows.iter().map(|r| r.bytes().map(|b| (b - b'0') as u32).collect()).collect()
}

#[test]
fn gf16_basics() {
    let f = gf16();
    assert_eq!(f.modulus(), &[1, 1, 0, 0, 1]);
    assert_eq!(f.alpha_pow(5).coeffs(), &[0, 1, 1, 0]);
    assert_eq!(f.log(&f.element(&[1, 1, 1, 0]).unwrap()).unwrap(), 10);
    let traces: Vec<u32> = (0..4).map(|k| f.trace(&f.alpha_pow(k))).collect();
    assert_eq!(traces, [0, 0, 0, 1]);
    assert_eq!(f.trace_to_subfield(2, &f.alpha_pow(3)).unwrap(), f.alpha_pow(10));
    assert_eq!(FieldCtx::new(2, 8).unwrap().modulus(), &[1, 0, 1, 1, 1, 0, 0, 0, 1]);
    assert_eq!(FieldCtx::new(3, 5).unwrap().modulus(), &[1, 2, 0, 0, 0, 1]);
}

#[test]
fn small_torus_grids() {
    let f = gf16();
    let torus = Torus::new(&f, 3, 5, &LinearForm::trace(&f)).unwrap();
    assert_eq!(torus.exponent_row(0), &[0, 3, 6, 9, 12]);
    assert_eq!(torus.exponent_row(1), &[5, 8, 11, 14, 2]);
    assert_eq!(torus.exponent_row(2), &[10, 13, 1, 4, 7]);
    let expected = grid(&["01111", "00110", "01001"]);
    for (i, row) in expected.iter().enumerate() {
        assert_eq!(torus.row(i), row.as_slice());
    }
    assert_eq!(Torus::new(&f, 3, 6, &LinearForm::trace(&f)).unwrap_err(), Error::BadFactorization { s: 3, t: 6 });
    let zero = LinearForm::new(&f, f.zero()).unwrap_err();
    assert_eq!(zero, Error::ZeroForm);
}

#[test]
fn gf64_torus_is_bijective() {
    let f = FieldCtx::new(2, 6).unwrap();
    let torus = Torus::new(&f, 7, 9, &LinearForm::trace(&f)).unwrap();
    let mut e = torus.exponents().to_vec();
    e.sort_unstable();
    assert_eq!(e, (0..63).collect::<Vec<u64>>());
}

#[test]
fn subfield_sequence_and_strip() {
    let f = gf16();
    let beta = f.alpha_pow(5);
    let b1 = f.add(&beta, &f.one());
    let (z, o) = (f.zero(), f.one());
    assert_eq!(feedback_vector(&f, 2).unwrap(), vec![beta.clone(), o.clone()]);

    let seq = DbSequence::new(&f, 2, &f.one()).unwrap();
    let expected: Vec<Element> = vec![
        z.clone(),
        o.clone(),
        o.clone(),
        b1.clone(),
        o.clone(),
        z.clone(),
        beta.clone(),
        beta.clone(),
        o.clone(),
        beta.clone(),
        z.clone(),
        b1.clone(),
        b1.clone(),
        beta.clone(),
        b1.clone(),
    ];
    assert_eq!(seq.symbols(), expected.as_slice());
    assert!(seq.satisfies_recurrence(&f));
    assert!(seq.windows_complete());

    let next = lfsr_extend(&f, &[z.clone(), o.clone()], seq.feedback(), 5).unwrap();
    assert_eq!(next, vec![o.clone(), b1.clone(), o.clone(), z.clone(), beta.clone()]);

    let full = seq.lift_to_full().unwrap();
    assert_eq!(full.len(), 16);
    assert_eq!(&full[..5], &[z.clone(), z.clone(), o.clone(), o.clone(), b1.clone()]);

    let strip = seq.to_strip(&f, true).unwrap();
    assert_eq!(strip.row(0), grid(&["0011110001001101"])[0].as_slice());
    assert_eq!(strip.row(1), grid(&["0000100110101111"])[0].as_slice());
    assert!(strip.windows_distinct(2));
    assert_eq!(strip.windows(2).len(), 16);
}

#[test]
fn subfield_generator_sequence() {
    let f = gf16();
    let db = DbSequence::of_subfield(&f, 2).unwrap();
    assert_eq!(db.digits(&f).unwrap(), vec![0, 1, 1]);
    assert_eq!(db.generator_exp(), 5);
}

#[test]
fn column_labels_gf16() {
    let f = gf16();
    let torus = Torus::new(&f, 3, 5, &LinearForm::trace(&f)).unwrap();
    let report = torus.classify_columns(2).unwrap();
    use ColumnLabel::*;
    assert_eq!(report.labels, vec![Zero, Shift(2), Shift(1), Shift(1), Shift(2)]);
    assert_eq!(report.zero_columns, 1);
    let counts = occurrence_counts(&f, 2).unwrap();
    assert_eq!(counts.counts, report.counts);
    assert_eq!(counts.zero_columns, 1);
    assert_eq!(torus.classify_columns(1).unwrap_err(), Error::NotSubfieldRegime);
}

#[test]
fn column_labels_gf64() {
    let f = FieldCtx::new(2, 6).unwrap();
    let torus = Torus::new(&f, 7, 9, &LinearForm::trace(&f)).unwrap();
    let report = torus.classify_columns(3).unwrap();
    let shifts: Vec<Option<usize>> = report
        .labels
        .iter()
        .map(|l| match l {
            ColumnLabel::Zero => None,
            ColumnLabel::Shift(r) => Some(*r),
        })
        .collect();
    assert_eq!(shifts, [None, Some(5), Some(3), Some(0), Some(6), Some(6), Some(0), Some(3), Some(5)]);
    let degrees: Vec<usize> = report.factors.iter().map(|o| o.poly.degree()).collect();
    assert_eq!(degrees, [1, 2, 2, 2, 2]);
    assert_eq!(occurrence_counts(&f, 3).unwrap().counts, report.counts);
    let irreducible: Vec<u64> = (0..7).filter(|&i| quadratic_criterion(&f, 3, i).unwrap()).collect();
    assert_eq!(irreducible, [0, 3, 5, 6]);
}

#[test]
fn column_labels_gf256() {
    let f = FieldCtx::new(2, 8).unwrap();
    let torus = Torus::new(&f, 15, 17, &LinearForm::trace(&f)).unwrap();
    let report = torus.classify_columns(4).unwrap();
    assert_eq!(report.zero_columns, 1);
    assert_eq!(report.labels[0], ColumnLabel::Zero);
    let expected = [3, 6, 1, 12, 4, 2, 8, 9, 9, 8, 2, 4, 12, 1, 6, 3];
    for (j, &r) in expected.iter().enumerate() {
        assert_eq!(report.labels[j + 1], ColumnLabel::Shift(r));
    }
    assert_eq!(report.counts.len(), 8);
    assert!(report.counts.values().all(|&c| c == 2));
    let irreducible: Vec<usize> = (0..15).filter(|&i| quadratic_criterion(&f, 4, i as u64).unwrap()).collect();
    assert_eq!(irreducible, report.counts.keys().copied().collect::<Vec<_>>());
}

#[test]
fn quadratic_criterion_small() {
    let f = gf16();
    assert!(quadratic_criterion(&f, 2, 1).unwrap());
    assert!(quadratic_criterion(&f, 2, 2).unwrap());
    assert!(!quadratic_criterion(&f, 2, 0).unwrap());
    let f3 = FieldCtx::new(3, 2).unwrap();
    assert_eq!(quadratic_criterion(&f3, 1, 0).unwrap_err(), Error::OddCharacteristic);
}

#[test]
fn extended_tables() {
    let f = gf16();
    let torus = Torus::new(&f, 3, 5, &LinearForm::trace(&f)).unwrap();
    let square = torus.extend_array(&kronecker_pattern(&f, 2).unwrap());
    assert_eq!((square.rows(), square.cols()), (4, 6));
    for (i, row) in grid(&["011110", "001100", "010010", "011110"]).iter().enumerate() {
        assert_eq!(square.row(i), row.as_slice());
    }
    let ell = torus.extend_array(&cells(&[(0, 0), (0, 1), (0, 2), (1, 0)]));
    assert_eq!((ell.rows(), ell.cols()), (4, 7));
    for (i, row) in grid(&["0111101", "0011000", "0100101", "0111101"]).iter().enumerate() {
        assert_eq!(ell.row(i), row.as_slice());
    }
    let single = torus.extend_array(&cells(&[(1, 1)]));
    assert_eq!((single.rows(), single.cols()), (3, 5));
}

#[test]
fn patterns_on_small_torus() {
    let f = gf16();
    let torus = Torus::new(&f, 3, 5, &LinearForm::trace(&f)).unwrap();
    let kron = kronecker_pattern(&f, 2).unwrap();
    assert_eq!(kron.cells(), &[(0, 0), (0, 1), (1, 0), (1, 1)]);
    let logs: Vec<u64> = torus.elements_of(&kron).unwrap().iter().map(|e| f.log(e).unwrap()).collect();
    assert_eq!(logs, [0, 3, 5, 8]);
    assert_eq!(torus.elements_of(&cells(&[(2, 4)])).unwrap(), vec![f.alpha_pow(7)]);
    assert!(torus.is_basis(&kron).unwrap());
    assert!(torus.verify_sampling(&kron).unwrap());

    let dependent = cells(&[(0, 0), (1, 0), (2, 0), (0, 1)]);
    assert_eq!(torus.pattern_rank(&dependent).unwrap(), 3);
    assert!(!torus.is_basis(&dependent).unwrap());
    assert!(!torus.verify_sampling(&dependent).unwrap());

    for p in [cells(&[(0, 0), (0, 1), (0, 2), (1, 0)]), cells(&[(0, 0), (0, 1), (1, 0), (2, 1)])] {
        assert!(torus.is_basis(&p).unwrap());
    }

    let g64 = FieldCtx::new(2, 6).unwrap();
    let k3 = kronecker_pattern(&g64, 3).unwrap();
    assert_eq!((k3.len(), k3.extents()), (6, (2, 1)));
    let t64 = Torus::new(&g64, 7, 9, &LinearForm::trace(&g64)).unwrap();
    assert!(t64.is_basis(&k3).unwrap());
    assert_eq!(kronecker_pattern(&f, 4).unwrap().cells(), &[(0, 0), (1, 0), (2, 0), (3, 0)]);
    assert_eq!(kronecker_pattern(&g64, 2).unwrap_err(), Error::NotSubfieldRegime);
}

#[test]
fn extension_and_recursive_build() {
    let f = gf16();
    let torus = Torus::new(&f, 3, 5, &LinearForm::trace(&f)).unwrap();
    let s0 = cells(&[(0, 2), (1, 1)]);
    let off = torus.find_extension_shift(&s0, &s0).unwrap();
    assert_eq!(off, TranslateOffset::new(0, 1));
    let built = torus.recursive_build(&s0).unwrap();
    assert_eq!(built.cells(), &[(0, 2), (0, 3), (1, 1), (1, 2)]);
    assert!(torus.is_basis(&built).unwrap());

    // the diagonal pair and its translates are all independent
    let diag = cells(&[(0, 0), (1, 1)]);
    for (a, b) in [(0, 1), (1, 0), (1, 2)] {
        assert!(torus.is_independent(&diag.translate(TranslateOffset::new(a, b), 3, 5)).unwrap());
        let union = diag.union(&diag.translate(TranslateOffset::new(a, b), 3, 5));
        assert!(torus.is_basis(&union).unwrap());
    }

    let three = cells(&[(0, 0), (0, 1), (0, 2)]);
    let two = cells(&[(1, 0), (1, 1)]);
    assert_eq!(torus.find_extension_shift(&three, &two).unwrap_err(), Error::DimensionExceeded { total: 5, n: 4 });
    let kron = kronecker_pattern(&f, 2).unwrap();
    assert_eq!(torus.recursive_build(&kron).unwrap(), kron);

    let g64 = FieldCtx::new(2, 6).unwrap();
    let t64 = Torus::new(&g64, 7, 9, &LinearForm::trace(&g64)).unwrap();
    let seed = cells(&[(0, 0), (0, 1), (1, 0)]);
    let big = t64.recursive_build(&seed).unwrap();
    assert_eq!(big.len(), 6);
    assert!(t64.verify_sampling(&big).unwrap());
}

#[test]
fn right_shift_update_rule() {
    let f = gf16();
    let torus = Torus::new(&f, 3, 5, &LinearForm::trace(&f)).unwrap();
    let kron = kronecker_pattern(&f, 2).unwrap();
    let u = torus.update_matrix(&kron, (0, 1), &UpdateTarget::NewCells).unwrap();
    assert_eq!(u.outputs, vec![(0, 1), (1, 1)]);
    assert_eq!(u.coeffs.to_rows(), vec![vec![1, 1, 0, 1], vec![0, 1, 1, 0]]);
    // α^6 = 1 + α^3 + α^8, α^11 = α^3 + α^5
    let sum = |ks: &[i64]| ks.iter().fold(f.zero(), |acc, &k| f.add(&acc, &f.alpha_pow(k)));
    assert_eq!(f.alpha_pow(6), sum(&[0, 3, 8]));
    assert_eq!(f.alpha_pow(11), sum(&[3, 5]));
    let bad = cells(&[(0, 0), (1, 0), (2, 0), (0, 1)]);
    assert_eq!(torus.update_matrix(&bad, (0, 1), &UpdateTarget::Full).unwrap_err(), Error::NotABasis);
}

#[test]
fn decode_examples() {
    let f = gf16();
    let torus = Torus::new(&f, 3, 5, &LinearForm::trace(&f)).unwrap();
    let cert = torus.certificate(&kronecker_pattern(&f, 2).unwrap()).unwrap();
    assert_eq!(torus.decode(&cert, &[0, 1, 0, 0]).unwrap(), TranslateOffset::new(0, 0));
    assert_eq!(torus.decode(&cert, &[1, 1, 0, 1]).unwrap(), TranslateOffset::new(0, 1));
    assert_eq!(torus.decode(&cert, &[0, 0, 0, 0]).unwrap_err(), Error::AllZeroPattern);
    assert_eq!(torus.decode(&cert, &[0, 1]).unwrap_err(), Error::LengthMismatch { expected: 4, found: 2 });
}

#[test]
fn field_construction_errors() {
    assert_eq!(FieldCtx::new(4, 2).unwrap_err(), Error::NonPrimeP(4));
    assert_eq!(FieldCtx::with_modulus(3, 2, &[1, 0, 1]).unwrap_err(), Error::NotPrimitive);
    assert_eq!(FieldCtx::with_modulus(2, 4, &[1, 0, 0, 0, 1]).unwrap_err(), Error::NotIrreducible);
}
