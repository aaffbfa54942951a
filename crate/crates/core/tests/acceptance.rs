//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_poisson::complex::sigma_squared_vanishes;
use toric_poisson::schouten::sigma_generic;
use toric_poisson::{
    assemble_sigma_matrix, build_pi, closed_sigma_monomial, closed_sigma_vector, complex::euler_characteristic,
    enumerate_cell, full_table, hamiltonian_classify, preset, rref, CellCohomology, DenseMatrix, GaussianRational,
    Hamiltonicity, HermitianForm, Monomial, MultiVector, Side, TableOptions, WedgeIndex, PRESET_NAMES,
};

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn form(rows: &[&[i64]]) -> HermitianForm {
    HermitianForm::new(DenseMatrix::from_ints(rows).unwrap()).unwrap()
}

fn grid(b: &HermitianForm, dmax: i64) -> Vec<Vec<usize>> {
    full_table(&build_pi(b), dmax, &TableOptions::default()).unwrap().grid()
}

fn compare(name: &str, got: &[Vec<usize>], want: &[[usize; 5]]) -> Result<(), String> {
    for (d, (g, w)) in got.iter().zip(want).enumerate() {
        ensure(g.as_slice() == w.as_slice(), format!("{name}: row d={d} is {g:?}, expected {w:?}"))?;
    }
    ensure(got.len() == want.len(), format!("{name}: {} rows, expected {}", got.len(), want.len()))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let got = grid(&preset("nakanishi").unwrap(), 6);
    let elapsed = start.elapsed();
    let mut want = vec![vec![0usize; 3]; 7];
    want[0][0] = 1;
    want[1][1] = 2;
    want[0][2] = 1;
    want[2][2] = 1;
    ensure(got == want, format!("grid {got:?}"))?;
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("7x3 grid exact in {elapsed:.2?}"))
}

const EMPTY: [usize; 5] = [0; 5];

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let p1xp1 = [
        [1, 0, 2, 0, 1],
        [0, 4, 0, 4, 0],
        [0, 0, 6, 0, 2],
        [0, 0, 0, 4, 0],
        [0, 0, 0, 0, 1],
        EMPTY,
        EMPTY,
        EMPTY,
        EMPTY,
    ];
    let p2 = [
        [1, 0, 0, 0, 1],
        [0, 4, 0, 0, 0],
        [0, 0, 6, 0, 0],
        [0, 0, 0, 4, 0],
        [0, 0, 2, 0, 1],
        [0, 0, 0, 4, 0],
        [0, 0, 0, 0, 2],
        EMPTY,
        EMPTY,
    ];
    compare("I2", &grid(&form(&[&[1, 0], &[0, 1]]), 8), &p1xp1)?;
    compare("[[2,1],[1,2]]", &grid(&form(&[&[2, 1], &[1, 2]]), 8), &p2)?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), format!("took {elapsed:?}"))?;
    Ok(format!("2 x 45 cells exact in {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let generic = [
        [1, 0, 0, 0, 1],
        [0, 4, 0, 0, 0],
        [0, 0, 6, 0, 0],
        [0, 0, 0, 4, 0],
        [0, 0, 0, 0, 1],
        EMPTY,
        EMPTY,
        EMPTY,
        EMPTY,
    ];
    let x2 = [
        [1, 0, 0, 2, 1],
        [0, 4, 0, 2, 2],
        [0, 0, 6, 2, 2],
        [0, 0, 0, 6, 2],
        [0, 0, 0, 2, 3],
        [0, 0, 0, 2, 2],
        [0, 0, 0, 2, 2],
        [0, 0, 0, 2, 2],
        [0, 0, 0, 2, 2],
    ];
    compare("X1", &grid(&form(&[&[3, -1], &[-1, 2]]), 8), &generic)?;
    compare("X2", &grid(&form(&[&[6, -2], &[-2, 2]]), 8), &x2)?;
    compare("X3", &grid(&form(&[&[11, -3], &[-3, 2]]), 8), &generic)?;
    Ok("3 x 45 cells exact; X2 keeps H^3 = H^4 = 2 for d = 5..8".into())
}

fn criterion_4() -> Outcome {
    let pi = build_pi(&form(&[&[6, -2], &[-2, 2]]));
    let mut dims = Vec::new();
    for d in 9..=12u32 {
        let coh = CellCohomology::compute(2, d as i64, 3, &pi).map_err(|e| e.to_string())?;
        ensure(coh.dim() >= 2, format!("dim H^3_[{d}] = {}", coh.dim()))?;
        let z = MultiVector::basis(Monomial::from_zeta(vec![0, d, 0, 0]), WedgeIndex::new(&[0, 2, 3]).unwrap());
        let w = MultiVector::basis(Monomial::from_zeta(vec![0, 0, 0, d]), WedgeIndex::new(&[0, 1, 2]).unwrap());
        for (label, v) in [("z2^d dz1^dw1^dw2", &z), ("w2^d dz1^dz2^dw1", &w)] {
            let coords = coh
                .class_coordinates(v)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("{label} is not a cocycle at d={d}"))?;
            ensure(coords.iter().any(|c| !c.is_zero()), format!("{label} is exact at d={d}"))?;
        }
        ensure(coh.spans_same_classes(&[z, w]).map_err(|e| e.to_string())? == (coh.dim() == 2), "span mismatch")?;
        dims.push(coh.dim());
    }
    Ok(format!("dim H^3_[9..12] = {dims:?}; both fields are non-exact cocycles in every degree"))
}

fn criterion_5() -> Outcome {
    let shape = assemble_sigma_matrix(2, 8, 2, &build_pi(&preset("p2").unwrap())).unwrap().shape();
    ensure(shape == (880, 990), format!("shape {shape:?}"))?;
    Ok("sigma^2_[8] is 880x990".into())
}

fn random_symmetric(rng: &mut ChaCha8Rng) -> HermitianForm {
    loop {
        let mut q = || {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=9);
            GaussianRational::from_fraction(num, den)
        };
        let (a, b, c) = (q(), q(), q());
        let m = DenseMatrix::from_rows(vec![vec![a, b.clone()], vec![b, c]]).unwrap();
        let f = HermitianForm::new(m).unwrap();
        if f.is_invertible() {
            return f;
        }
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7011c);
    let mut forms: Vec<(String, HermitianForm)> =
        PRESET_NAMES.iter().map(|n| (n.to_string(), preset(n).unwrap())).collect();
    for k in 0..10 {
        let f = random_symmetric(&mut rng);
        forms.push((format!("random{k} [{f}]"), f));
    }
    for (name, b) in &forms {
        let summary = full_table(&build_pi(b), 6, &TableOptions::default()).unwrap();
        let n = b.n();
        let h0 = summary.column(0);
        let h1 = summary.column(1);
        let want0: Vec<usize> = (0..=6).map(|d| usize::from(d == 0)).collect();
        let want1: Vec<usize> = (0..=6).map(|d| if d == 1 { 2 * n } else { 0 }).collect();
        ensure(h0 == want0, format!("{name}: H^0 column {h0:?}"))?;
        ensure(h1 == want1, format!("{name}: H^1 column {h1:?}"))?;
    }
    Ok(format!("{} forms, H^0 and H^1 columns exact to d = 6", forms.len()))
}

fn criterion_7() -> Outcome {
    let five = GaussianRational::from(5);
    for name in ["nakanishi", "p2"] {
        let b = preset(name).unwrap();
        let (g1, g5) = (grid(&b, 6), grid(&b.scale(&five), 6));
        ensure(g1 == g5, format!("{name}: {g1:?} vs {g5:?}"))?;
    }
    Ok("B and 5B agree for n=1 and p2".into())
}

fn criterion_8() -> Outcome {
    let mut cases = 0usize;
    for name in PRESET_NAMES {
        let pi = build_pi(&preset(name).unwrap());
        let n = pi.n();
        for d in 0..=6 {
            for p in 0..=1 {
                let cell = enumerate_cell(n, d, p);
                for (mono, wedge) in cell.basis() {
                    let y = MultiVector::basis(mono.clone(), *wedge);
                    let closed = match wedge.indices().next() {
                        None => closed_sigma_monomial(mono.alpha(), mono.beta(), &pi),
                        Some(k) if k < n => closed_sigma_vector(mono.alpha(), mono.beta(), k, Side::Z, &pi),
                        Some(k) => closed_sigma_vector(mono.alpha(), mono.beta(), k - n, Side::W, &pi),
                    };
                    let generic = sigma_generic(&y, &pi).unwrap();
                    ensure(closed == generic, format!("{name}: mismatch on {y}"))?;
                    cases += 1;
                }
            }
        }
    }
    ensure(cases >= 2000, format!("only {cases} cases"))?;
    Ok(format!("{cases} basis elements agree exactly"))
}

fn criterion_9() -> Outcome {
    let mut forms: Vec<HermitianForm> = PRESET_NAMES.iter().map(|n| preset(n).unwrap()).collect();
    forms.push(HermitianForm::parse("2,1+i;1-i,3").unwrap());
    let (mut squares, mut matrices, mut shifts) = (0, 0, 0);
    for b in &forms {
        let pi = build_pi(b);
        let n = b.n();
        let top = 2 * n as i64;
        for d in 0..=8 {
            for p in 0..=top {
                ensure(sigma_squared_vanishes(n, d, p, &pi).unwrap(), format!("[{b}] sigma^2 != 0 at ({d},{p})"))?;
                squares += 1;
                let m = assemble_sigma_matrix(n, d, p, &pi).unwrap().matrix;
                let r = rref(&m);
                ensure(r.rank() + r.nullspace().len() == m.ncols(), format!("[{b}] rank+nullity at ({d},{p})"))?;
                matrices += 1;
            }
        }
        for s in -top..=6 {
            let (chain, homology) = euler_characteristic(n, s, &pi).unwrap();
            ensure(chain == homology, format!("[{b}] Euler identity fails at shift {s}: {chain} vs {homology}"))?;
            shifts += 1;
        }
    }
    Ok(format!("{squares} sigma^2 products vanish, {matrices} rank+nullity checks, {shifts} Euler identities"))
}

fn criterion_10() -> Outcome {
    let two = hamiltonian_classify(&form(&[&[2]])).unwrap();
    ensure(two.classification == Hamiltonicity::FiniteQuotientValued, format!("[2]: {}", two.classification))?;
    ensure(two.exponent_matrix == DenseMatrix::parse("1/2").unwrap(), format!("[2]: {}", two.exponent_matrix))?;
    let id = hamiltonian_classify(&preset("p1xp1").unwrap()).unwrap();
    ensure(id.classification == Hamiltonicity::SingleValuedTorusValued, format!("I: {}", id.classification))?;
    let p2 = hamiltonian_classify(&preset("p2").unwrap()).unwrap();
    let want = DenseMatrix::from_ints(&[&[2, -1], &[-1, 2]]).unwrap().scale(&GaussianRational::from_fraction(1, 3));
    ensure(p2.classification == Hamiltonicity::FiniteQuotientValued, format!("p2: {}", p2.classification))?;
    ensure(p2.exponent_matrix == want, format!("p2: {}", p2.exponent_matrix))?;
    Ok(format!("[2] -> {} ({}), I -> {}, p2 -> {} ({})", two.classification, two.exponent_matrix, id.classification, p2.classification, p2.exponent_matrix))
}

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("n=1 table", criterion_1),
        ("I2 and [[2,1],[1,2]] tables", criterion_2),
        ("Hirzebruch tables", criterion_3),
        ("X2 persistent H^3 generators", criterion_4),
        ("880x990 matrix shape", criterion_5),
        ("H^0/H^1 theorem suite", criterion_6),
        ("scalar invariance", criterion_7),
        ("closed forms vs Schouten bracket", criterion_8),
        ("structural identities", criterion_9),
        ("Hamiltonian classification", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
