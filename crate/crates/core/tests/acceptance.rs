//! Exit-gate checks, one line each. Every arithmetic comparison is exact.

mod oracle;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use burau::braid::{Bindings, BraidWord};
use burau::burau::{eval, eval_trunc, form_j, gamma_check, generator, vector_ones, vector_v};
use burau::density::{approximate, WitnessLibrary};
use burau::laurent::LaurentPoly;
use burau::liealg::{phi_eval, phi_from_w, GradedElement, KernelElement, KernelTerm, PhiMode};
use burau::linalg::LaurentMatrix;
use burau::search::{search_deep, SearchConfig};
use burau::verify::random_word;
use burau::Depth;
use num_rational::BigRational;
use num_traits::{One, Zero};
use oracle::IMat;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion<'a> = (u32, &'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn word(text: &str, n: usize) -> BraidWord {
    Bindings::builtin().parse(text, n).expect("valid word")
}

fn letters(w: &BraidWord) -> Vec<i32> {
    w.flatten(200_000).expect("word fits")
}

fn delta5() -> IMat {
    vec![
        vec![0, 2, 0, 2, -4],
        vec![2, -2, -2, 1, 1],
        vec![0, -2, 0, -2, 4],
        vec![2, 1, -2, 1, -2],
        vec![-4, 1, 4, -2, 1],
    ]
}

fn padded(m: &IMat, n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| if i < m.len() && j < m.len() { m[i][j] } else { 0 }).collect()).collect()
}

fn c1_generators() -> Outcome {
    let t = LaurentPoly::t();
    let one = LaurentPoly::one();
    let mut relations = 0;
    for n in 2..=6 {
        for i in 1..n {
            let g = generator(n, i, false).map_err(|e| e.to_string())?;
            for a in 0..n {
                for b in 0..n {
                    let expected = match (a + 1, b + 1) {
                        (r, c) if r == i && c == i => &one - &t,
                        (r, c) if r == i && c == i + 1 => one.clone(),
                        (r, c) if r == i + 1 && c == i => t.clone(),
                        (r, c) if r == i + 1 && c == i + 1 => LaurentPoly::zero(),
                        _ if a == b => one.clone(),
                        _ => LaurentPoly::zero(),
                    };
                    ensure(g[(a, b)] == expected, || format!("n={n} beta(s{i})[{a}][{b}] = {}", g[(a, b)]))?;
                }
            }
            let inv = generator(n, i, true).map_err(|e| e.to_string())?;
            ensure((&g * &inv).is_identity(), || format!("n={n}: s{i} S{i} != I"))?;
            for j in i + 1..n {
                let h = generator(n, j, false).map_err(|e| e.to_string())?;
                if j == i + 1 {
                    ensure(&(&g * &h) * &g == &(&h * &g) * &h, || format!("n={n}: braid relation s{i} s{j}"))?;
                } else {
                    ensure(&g * &h == &h * &g, || format!("n={n}: s{i} s{j} do not commute"))?;
                }
                relations += 1;
            }
        }
    }
    Ok(format!("n = 2..6, {relations} relations"))
}

/// Permutation matrix of a word from products of integer swap matrices.
fn swap_product(n: usize, letters: &[i32]) -> IMat {
    let mut m: IMat = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    for &l in letters {
        let i = l.unsigned_abs() as usize - 1;
        let mut s: IMat = (0..n).map(|a| (0..n).map(|b| (a == b) as i128).collect()).collect();
        s[i][i] = 0;
        s[i + 1][i + 1] = 0;
        s[i][i + 1] = 1;
        s[i + 1][i] = 1;
        m = oracle::imul(&m, &s);
    }
    m
}

fn c2_invariance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut total = 0;
    for n in 2..=6 {
        let v = vector_v(n);
        let ones = vector_ones(n);
        let j = form_j(n);
        let mut words: Vec<BraidWord> = (1..n)
            .flat_map(|i| [BraidWord::generator(n, i, false).unwrap(), BraidWord::generator(n, i, true).unwrap()])
            .collect();
        words.extend((0..200).map(|_| {
            let len = rng.gen_range(0..=24);
            random_word(n, len, &mut rng)
        }));
        for w in &words {
            let b = eval(w);
            ensure(&b * &v == v, || format!("beta({w}) v != v"))?;
            ensure(&ones * &b == ones, || format!("1 beta({w}) != 1"))?;
            ensure(&(&b.star() * &j) * &b == j, || format!("beta({w})* J beta({w}) != J"))?;
            let at_one = oracle::to_imat(&b.eval_at_one());
            ensure(at_one == swap_product(n, &letters(w)), || format!("beta({w}) mod s is not its permutation"))?;
            total += 1;
        }
    }
    Ok(format!("{total} words"))
}

fn c3_alpha() -> Outcome {
    let n = 5;
    let a = eval(&word("ALPHA", n));
    ensure(a.depth() == Depth::Finite(3), || format!("depth {}", a.depth()))?;
    let s = oracle::expand(&a, 5);
    ensure(oracle::depth(&s) == Some(3), || "oracle depth is not 3".into())?;
    let expected = oracle::isub(&oracle::x(n, 2, 4), &oracle::x(n, 1, 3));
    ensure(oracle::coefficient(&s, 3) == expected, || "(alpha)_(3) != X24 - X13".into())?;
    ensure(oracle::to_imat(a.to_trunc(4).coefficient(3)) == expected, || "library expansion disagrees".into())?;
    Ok("depth 3, (alpha)_(3) = X24 - X13".into())
}

fn c4_delta() -> Outcome {
    let mut notes = Vec::new();
    for n in [5, 6] {
        let d = word("DELTA", n);
        let t = eval_trunc(&d, 6);
        ensure(t.depth() == Depth::Finite(5), || format!("n={n}: truncated depth {}", t.depth()))?;
        let expected = padded(&delta5(), n);
        ensure(oracle::to_imat(t.coefficient(5)) == expected, || format!("n={n}: truncated (delta)_(5) differs"))?;
        let plain = oracle::word(n, &letters(&d), 7);
        ensure(oracle::depth(&plain) == Some(5), || format!("n={n}: oracle depth is not 5"))?;
        ensure(oracle::coefficient(&plain, 5) == expected, || format!("n={n}: oracle (delta)_(5) differs"))?;
        let exact = eval(&d);
        ensure(exact.depth() == Depth::Finite(5), || format!("n={n}: exact depth {}", exact.depth()))?;
        notes.push(format!("n={n} ({} letters)", d.literal_length()));
    }
    Ok(format!("depth 5 and published coefficient, {}", notes.join(", ")))
}

fn c5_bracket_grading(lib: &WitnessLibrary) -> Outcome {
    let mut pairs = Vec::new();
    'outer: for round in 0..4 {
        for k in 1..=5u32 {
            for l in k..=(6 - k) {
                let (xs, ys) = (lib.witnesses(k), lib.witnesses(l));
                for r in 0..3 {
                    let a = &xs[(round * 3 + r) % xs.len()];
                    let b = &ys[(round * 5 + 2 * r + 1) % ys.len()];
                    pairs.push((k, l, a.word.clone(), b.word.clone()));
                    if pairs.len() == 100 {
                        break 'outer;
                    }
                }
            }
        }
    }
    for (k, l, a, b) in &pairs {
        let (k, l) = (*k as usize, *l as usize);
        let ea = oracle::word(5, &letters(a), k + 1);
        let eb = oracle::word(5, &letters(b), l + 1);
        ensure(oracle::depth(&ea).is_none_or(|d| d >= k), || format!("{a} is shallower than {k}"))?;
        let expected = oracle::ibracket(&oracle::coefficient(&ea, k), &oracle::coefficient(&eb, l));
        let c = eval_trunc(&a.commutator(b).unwrap(), k + l + 1);
        ensure(c.depth().is_at_least((k + l) as u32), || format!("[{a}, {b}] has depth {}", c.depth()))?;
        ensure(oracle::to_imat(c.coefficient(k + l)) == expected, || format!("[{a}, {b}]: coefficient is not the bracket"))?;
    }
    Ok(format!("{} pairs with k + l <= 6", pairs.len()))
}

/// Determinant over `Q` at an integer value of `t`, by elimination.
fn det_at(m: &LaurentMatrix, t: i64) -> BigRational {
    let n = m.rows();
    let tq = BigRational::from_integer(t.into());
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    m[(i, j)].terms().fold(BigRational::zero(), |acc, (e, c)| {
                        let p = if e >= 0 { num_traits::pow(tq.clone(), e as usize) } else { num_traits::pow(tq.recip(), (-e) as usize) };
                        acc + BigRational::from_integer(c.clone()) * p
                    })
                })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            let pivot = a[c].clone();
            for (x, p) in a[r].iter_mut().zip(&pivot).skip(c) {
                *x -= &f * p;
            }
        }
    }
    det
}

fn c6_graded_structure(lib: &WitnessLibrary) -> Outcome {
    let mut count = 0;
    for k in 1..=6u32 {
        for w in lib.witnesses(k) {
            let m = oracle::coefficient(&oracle::word(5, &letters(&w.word), k as usize + 1), k as usize);
            ensure(oracle::to_imat(w.element.matrix()) == m, || format!("stored coefficient of {} differs", w.word))?;
            ensure(m.iter().all(|r| r.iter().sum::<i128>() == 0), || format!("({})_({k}) 1 != 0", w.word))?;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let symmetric = (0..5).all(|i| (0..5).all(|j| m[j][i] == sign * m[i][j]));
            ensure(symmetric, || format!("({})_({k}) has the wrong symmetry", w.word))?;
            if k >= 2 {
                ensure((0..5).map(|i| m[i][i]).sum::<i128>() == 0, || format!("({})_({k}) has nonzero trace", w.word))?;
            }
            count += 1;
        }
    }
    let mut dets = 0;
    for k in 2..=4u32 {
        for w in lib.witnesses(k).iter().step_by(7).take(3) {
            let b = eval(&w.word);
            ensure(b.det().is_one(), || format!("det beta({}) != 1", w.word))?;
            for t in [2, 3] {
                ensure(det_at(&b, t).is_one(), || format!("det beta({}) at t = {t} != 1", w.word))?;
            }
            dets += 1;
        }
    }
    Ok(format!("{count} witnesses in degrees 1..6, {dets} determinants"))
}

fn c7_lie_algebra() -> Outcome {
    let n = 5;
    let mut identities = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let lhs = oracle::ibracket(&oracle::x(n, i, j), &oracle::x(n, i, k));
                let lib_lhs = burau::liealg::gen_x(i, j, n).unwrap().bracket(&burau::liealg::gen_x(i, k, n).unwrap()).unwrap();
                ensure(lhs == oracle::y(n, i, j, k), || format!("<X{i}{j}, X{i}{k}> != Y{i}{j}{k}"))?;
                ensure(oracle::to_imat(lib_lhs.matrix()) == lhs, || "library bracket differs".into())?;
                let xy = oracle::ibracket(&oracle::x(n, i, j), &oracle::y(n, i, j, k));
                let rhs = oracle::iscale(&oracle::isub(&oracle::x(n, i, k), &oracle::x(n, j, k)), 2);
                ensure(xy == rhs, || format!("<X{i}{j}, Y{i}{j}{k}> != 2(X{i}{k} - X{j}{k})"))?;
                identities += 2;
            }
            for k in 1..=n {
                for l in 1..=n {
                    let mut idx = vec![i, j, k, l];
                    idx.sort();
                    idx.dedup();
                    if k != l && idx.len() != 3 {
                        let z = oracle::ibracket(&oracle::x(n, i, j), &oracle::x(n, k, l));
                        ensure(z == oracle::zero(n), || format!("<X{i}{j}, X{k}{l}> != 0"))?;
                        identities += 1;
                    }
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let g1: Vec<IMat> = pairs.iter().map(|&(i, j)| oracle::x(n, i, j)).collect();
    let g_odd: Vec<IMat> = pairs.iter().skip(1).map(|&(i, j)| oracle::isub(&oracle::x(n, i, j), &oracle::x(n, 1, 2))).collect();
    let g_even: Vec<IMat> = (2..=n).flat_map(|j| (j + 1..=n).map(move |k| oracle::y(n, 1, j, k))).collect();
    let flat = |ms: &[IMat]| ms.iter().map(oracle::flat).collect::<Vec<_>>();
    let brackets = |a: &[IMat], b: &[IMat]| {
        a.iter().flat_map(|x| b.iter().map(move |y| oracle::flat(&oracle::ibracket(x, y)))).collect::<Vec<_>>()
    };

    // <G_1, G_3> = G_4, rank 6
    let g13 = brackets(&g1, &g_odd);
    ensure(oracle::span_equal(&g13, &flat(&g_even)), || "<G_1, G_3> != G_4".into())?;
    ensure(oracle::rank(&g13) == 6, || format!("rank <G_1, G_3> = {}", oracle::rank(&g13)))?;
    let lib13 = burau::liealg::bracket_lattice(n, 3);
    ensure(lib13.rank() == 6 && lib13 == burau::liealg::span(&burau::liealg::basis(n, 4), n), || "library lattice differs".into())?;

    // 2 G_5 inside <G_1, G_4>
    let g14 = brackets(&g1, &g_even);
    for b in &g_odd {
        ensure(oracle::in_span(&g14, &oracle::flat(&oracle::iscale(b, 2))), || "2 G_5 is not inside <G_1, G_4>".into())?;
    }

    // the S_5 orbit of X24 - X13 spans G_3, rank 9
    let seed = oracle::isub(&oracle::x(n, 2, 4), &oracle::x(n, 1, 3));
    let orbit: Vec<Vec<i128>> = oracle::permutations(n).iter().map(|p| oracle::flat(&oracle::relabel(&seed, p))).collect();
    ensure(oracle::span_equal(&orbit, &flat(&g_odd)), || "orbit does not span G_3".into())?;
    ensure(oracle::rank(&orbit) == 9, || format!("orbit rank {}", oracle::rank(&orbit)))?;
    Ok(format!("{identities} bracket identities; ranks 6 and 9"))
}

fn w_element(n: usize, degree: u32) -> GradedElement {
    let w = oracle::isub(&oracle::x(n, 2, 4), &oracle::x(n, 2, 5));
    GradedElement::new(degree, oracle::from_imat(&w)).unwrap()
}

fn kernel_d(n: usize, degree: u32, omega: Option<&BraidWord>) -> KernelElement {
    let w = w_element(n, degree);
    let term = |pair| match omega {
        Some(o) => KernelTerm::with_witness(pair, w.clone(), o.clone()),
        None => KernelTerm::new(pair, w.clone()),
    };
    KernelElement::new(n, degree, vec![term((2, 5)), term((2, 5)), term((4, 5))]).unwrap()
}

fn c8_phi(lib: &WitnessLibrary) -> Outcome {
    let n = 5;
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let g1: Vec<IMat> = pairs.iter().map(|&(i, j)| oracle::x(n, i, j)).collect();
    let g_even: Vec<IMat> = (2..=n).flat_map(|j| (j + 1..=n).map(move |k| oracle::y(n, 1, j, k))).collect();
    let g14: Vec<Vec<i128>> =
        g1.iter().flat_map(|x| g_even.iter().map(move |y| oracle::flat(&oracle::ibracket(x, y)))).collect();
    let w = oracle::isub(&oracle::x(n, 2, 4), &oracle::x(n, 2, 5));
    let in_class = |m: &IMat| oracle::in_span(&g14, &oracle::flat(&oracle::isub(m, &w)));

    let base = word("[ALPHA, s4]", n);
    let d = kernel_d(n, 3, Some(&base));
    let v = phi_eval(&d, PhiMode::Verify).map_err(|e| e.to_string())?;

    // closed formula, recomputed from plain expansions
    let om = oracle::word(n, &letters(&base), 5);
    ensure(oracle::coefficient(&om, 3) == w, || "([alpha, s4])_(3) != X24 - X25".into())?;
    let mut formula = oracle::zero(n);
    for (i, j) in [(2, 5), (2, 5), (4, 5)] {
        let xi = oracle::x(n, i, j);
        let a2 = oracle::coefficient(&oracle::word(n, &letters(&BraidWord::pure(n, i, j).unwrap()), 3), 2);
        formula = oracle::iadd(&formula, &oracle::ibracket(&xi, &oracle::coefficient(&om, 4)));
        formula = oracle::iadd(&formula, &oracle::ibracket(&a2, &w));
        formula = oracle::iadd(&formula, &oracle::imul(&oracle::ibracket(&w, &xi), &xi));
    }
    let direct = oracle::coefficient(&oracle::word(n, &letters(&d.commutator_word().unwrap()), 6), 5);
    ensure(formula == direct, || "closed formula and direct coefficient differ".into())?;
    ensure(oracle::to_imat(v.coset.representative().matrix()) == direct, || "library direct value differs".into())?;
    ensure(in_class(&direct), || "phi(d) is not X24 - X25 modulo <G_1, G_4>".into())?;

    // five witnesses
    let deep = lib.basis_words(4);
    let omegas = [
        base.clone(),
        base.concat(&lib.basis_words(5)[1]).unwrap(),
        base.concat(&deep[0]).unwrap(),
        base.concat(&deep[2].power(-2)).unwrap(),
        base.conjugate_by(&BraidWord::pure(n, 1, 2).unwrap()).unwrap(),
    ];
    let mut distinct = std::collections::BTreeSet::new();
    for o in &omegas {
        let dw = kernel_d(n, 3, Some(o)).commutator_word().unwrap();
        let c = oracle::coefficient(&oracle::word(n, &letters(&dw), 6), 5);
        ensure(in_class(&c), || format!("witness {o} gives another class"))?;
        distinct.insert(letters(o));
    }
    ensure(distinct.len() == 5, || format!("witnesses are not distinct: {}", omegas.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(" | ")))?;

    // degree 3 against degree 5
    let low = phi_from_w(&kernel_d(n, 3, None), 5).map_err(|e| e.to_string())?;
    let high = phi_from_w(&kernel_d(n, 3, None), 7).map_err(|e| e.to_string())?;
    ensure(in_class(&oracle::to_imat(low.representative().matrix())), || "degree-5 closed form is off".into())?;
    ensure(in_class(&oracle::to_imat(high.representative().matrix())), || "degree-7 closed form is off".into())?;
    let omega5 = lib.solve_in_degree(&w_element(n, 5)).unwrap();
    let v5 = phi_eval(&kernel_d(n, 5, Some(&omega5)), PhiMode::Verify).map_err(|e| e.to_string())?;
    ensure(in_class(&oracle::to_imat(v5.coset.representative().matrix())), || "degree-7 direct value is off".into())?;
    Ok("formula = direct; class X24 - X25 for 5 witnesses and in degrees 5 and 7".into())
}

fn c9_density() -> Outcome {
    let n = 5;
    let k = 4;
    let lib = WitnessLibrary::build(n, k).map_err(|e| e.to_string())?;
    let mut rng = StdRng::seed_from_u64(99);
    let mut longest = 0;
    for _ in 0..20 {
        let len = rng.gen_range(0..=15);
        let w = random_word(n, len, &mut rng);
        // the engine sees only the matrix
        let gamma = gamma_check(&eval(&w)).map_err(|r| r.to_string())?;
        let r = approximate(&lib, &gamma, k).map_err(|e| e.to_string())?;
        let found = letters(&r.word);
        longest = longest.max(found.len());
        let target = oracle::word(n, &letters(&w), k as usize + 1);
        let got = oracle::word(n, &found, k as usize + 1);
        ensure(target == got, || format!("approximation of {w} differs modulo s^5"))?;
    }
    Ok(format!("20 elements, residual depth >= 5, longest word {longest} letters"))
}

fn c10_search() -> Outcome {
    let n = 5;
    let cfg = SearchConfig::alpha_reconstruction(n).map_err(|e| e.to_string())?;
    ensure(cfg.budget <= 1_000_000, || "budget over 10^6".into())?;
    let report = search_deep(&cfg).map_err(|e| e.to_string())?;
    let seed = oracle::isub(&oracle::x(n, 2, 4), &oracle::x(n, 1, 3));
    let orbit: Vec<IMat> = oracle::permutations(n)
        .iter()
        .flat_map(|p| {
            let m = oracle::relabel(&seed, p);
            [oracle::iscale(&m, -1), m]
        })
        .collect();
    for h in &report.hits {
        let plain = oracle::word(n, &letters(&h.word), 4);
        if oracle::depth(&plain) == Some(3) && orbit.contains(&oracle::coefficient(&plain, 3)) {
            return Ok(format!("hit #{} {} after {} candidates", h.index, h.word, report.evaluated));
        }
    }
    Err(format!("no orbit hit among {} hits", report.hits.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let lib = WitnessLibrary::build(5, 6).expect("library builds");
    println!("witness library n = 5 up to degree 6 built in {:.2?}", start.elapsed());
    let criteria: Vec<Criterion> = vec![
        (1, "generator correctness", Duration::from_secs(1), Box::new(c1_generators)),
        (2, "invariance suite", Duration::from_secs(30), Box::new(c2_invariance)),
        (3, "alpha reproduction", Duration::from_secs(5), Box::new(c3_alpha)),
        (4, "delta reproduction", Duration::from_secs(60), Box::new(c4_delta)),
        (5, "bracket grading", Duration::from_secs(120), Box::new(|| c5_bracket_grading(&lib))),
        (6, "graded structure", Duration::from_secs(60), Box::new(|| c6_graded_structure(&lib))),
        (7, "Lie algebra suite", Duration::from_secs(60), Box::new(c7_lie_algebra)),
        (8, "phi suite", Duration::from_secs(300), Box::new(|| c8_phi(&lib))),
        (9, "density round-trip", Duration::from_secs(600), Box::new(c9_density)),
        (10, "search reproduction", Duration::from_secs(900), Box::new(c10_search)),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in &criteria {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = t.elapsed();
        let result = result.and_then(|s| {
            if elapsed > *limit {
                Err(format!("took {elapsed:.2?}, limit {limit:?} ({s})"))
            } else {
                Ok(s)
            }
        });
        match result {
            Ok(detail) => println!("criterion {id:>2} PASS {name} [{elapsed:.2?}] {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL {name} [{elapsed:.2?}] {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
