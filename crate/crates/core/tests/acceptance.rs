//! Acceptance suite: one PASS/FAIL line per criterion, each under a fixed time limit.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use knoerrer::endomorphism::{restriction, verify_iso, EndAlgebra};
use knoerrer::equivalence::{
    corner_restriction, decompose, k0_singularity, local_fd_obstruction, singular_equivalent, KeptSet,
    Obstruction, Singularity,
};
use knoerrer::fractions::{dual, evaluate, expand, lambda_seq, point_diagram, CoprimePair, Evaluated, HJSeq};
use knoerrer::homology::{BasicAlgebra, GlobalDimension, Homology};
use knoerrer::monomial::{KappaAlgebra, Monomial};
use knoerrer::presentations::{
    knoerrer_presentation, lambda_ext, lambda_presentation, recon_presentation, riemenschneider_presentation,
};
use num_integer::Integer;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pairs(rmax: u64) -> impl Iterator<Item = CoprimePair> {
    CoprimePair::enumerate(2, rmax)
}

fn oracle_expand(mut r: u64, mut a: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while a > 0 {
        let q = r.div_ceil(a);
        out.push(q);
        (r, a) = (a, q * a - r);
    }
    out
}

fn oracle_evaluate(seq: &[u64]) -> (i128, i128) {
    let (mut p, mut q) = (1i128, 0i128);
    for &x in seq.iter().rev() {
        (p, q) = (x as i128 * p - q, p);
    }
    (p, q)
}

fn oracle_lambda(alpha: &[u64]) -> Vec<u64> {
    let n = alpha.len();
    let mut l = vec![0u64; n + 2];
    l[n] = 1;
    for i in (1..=n).rev() {
        l[i - 1] = alpha[i - 1] * l[i] - l[i + 1];
    }
    l.truncate(n + 1);
    l
}

/// Product of normal monomials by the subword criterion: the written word
/// `z_l^{b_l} ⋯ z_1^{b_1}` is nonzero iff it contains no defining relation.
fn oracle_mul(beta: &[u64], x: &[u32], y: &[u32]) -> Option<Vec<u32>> {
    let lo_x = x.iter().position(|&e| e > 0);
    let hi_y = y.iter().rposition(|&e| e > 0);
    if let (Some(lx), Some(hy)) = (lo_x, hi_y) {
        if lx < hy {
            return None;
        }
    }
    let e: Vec<u32> = x.iter().zip(y).map(|(a, b)| a + b).collect();
    let l = beta.len();
    for i in 0..l {
        if e[i] as u64 >= beta[i] {
            return None;
        }
        for j in 0..i {
            let ends = e[i] as u64 + 1 >= beta[i] && e[j] as u64 + 1 >= beta[j];
            if ends && (j + 1..i).all(|k| e[k] as u64 + 2 == beta[k]) {
                return None;
            }
        }
    }
    Some(e)
}

fn criterion_1() -> Check {
    let mut count = 0;
    for p in pairs(200) {
        let (r, a) = (p.r(), p.a());
        let alpha = expand(p);
        ensure(alpha.entries() == oracle_expand(r, a).as_slice(), || format!("{p}: expansion"))?;
        ensure(oracle_evaluate(alpha.entries()) == (r as i128, a as i128), || format!("{p}: evaluation oracle"))?;
        ensure(evaluate(&alpha) == Ok(Evaluated::Pair(p)), || format!("{p}: round trip"))?;
        let beta = dual(&alpha);
        ensure(dual(&beta) == alpha, || format!("{p}: dual involution"))?;
        ensure(beta == expand(p.dual()), || format!("{p}: dual equals expansion of r/(r-a)"))?;
        let sa: u64 = alpha.entries().iter().map(|x| x - 1).sum();
        let sb: u64 = beta.entries().iter().map(|x| x - 1).sum();
        ensure(sa == sb, || format!("{p}: identity (1)"))?;
        let l2: u64 = alpha.entries().iter().map(|x| x - 2).sum::<u64>() + 1;
        ensure(l2 == beta.len() as u64, || format!("{p}: identity (2)"))?;
        let n2: u64 = beta.entries().iter().map(|x| x - 2).sum::<u64>() + 1;
        ensure(n2 == alpha.len() as u64, || format!("{p}: identity (3)"))?;
        let diag = point_diagram(&alpha);
        let rows: Vec<u64> = diag.rows.iter().map(|row| row.count as u64).collect();
        let cols: Vec<u64> = diag.column_counts().iter().map(|&c| c as u64).collect();
        let want_rows: Vec<u64> = alpha.entries().iter().map(|x| x - 1).collect();
        let want_cols: Vec<u64> = beta.entries().iter().map(|x| x - 1).collect();
        ensure(rows == want_rows && cols == want_cols, || format!("{p}: point diagram"))?;
        count += 1;
    }
    Ok(format!("{count} pairs"))
}

fn criterion_2() -> Check {
    let mut count = 0;
    for p in pairs(200) {
        let k = KappaAlgebra::new(p);
        ensure(k.dim() as u64 == p.r(), || format!("{p}: dim {} != r", k.dim()))?;
        ensure(k.largest_proper_ideal_dim() as u64 == p.a(), || {
            format!("{p}: largest proper ideal {} != a", k.largest_proper_ideal_dim())
        })?;
        let n = oracle_expand(p.r(), p.a()).len();
        ensure(k.max_degree() as usize == n, || format!("{p}: max degree {} != n = {n}", k.max_degree()))?;
        let l = oracle_expand(p.r(), p.r() - p.a()).len();
        let emb = riemenschneider_presentation(p).embedding_dimension();
        ensure(k.l() == l && emb == l + 2, || format!("{p}: l = {}, embedding dimension {emb}", k.l()))?;
        count += 1;
    }
    Ok(format!("{count} pairs"))
}

fn criterion_3() -> Check {
    let mut count = 0;
    for p in pairs(100) {
        let k = KappaAlgebra::new(p);
        let alpha = oracle_expand(p.r(), p.a());
        let lambda = oracle_lambda(&alpha);
        let dims: Vec<u64> = k.ideals().iter().map(|i| i.dim as u64).collect();
        ensure(dims == lambda, || format!("{p}: ideal dims {dims:?} != lambda {lambda:?}"))?;
        let classes: HashSet<usize> = (0..k.dim())
            .map(|m| k.classify_ideal(&k.monomial(m)))
            .collect::<Result<_, _>>()
            .map_err(|e| format!("{p}: {e}"))?;
        ensure(classes.len() == alpha.len() + 1, || format!("{p}: {} classes", classes.len()))?;
        if p.r() <= 40 {
            let beta = oracle_expand(p.r(), p.r() - p.a());
            let exps: Vec<Vec<u32>> = k.basis().iter().map(|m| m.exponents().unwrap().to_vec()).collect();
            let ann = |m: &[u32]| -> Vec<bool> { exps.iter().map(|q| oracle_mul(&beta, q, m).is_none()).collect() };
            let gens: Vec<Vec<bool>> =
                k.ideals().iter().map(|i| ann(i.generator.exponents().unwrap())).collect();
            let all: HashSet<Vec<bool>> = exps.iter().map(|e| ann(e)).collect();
            ensure(all.len() == gens.len(), || format!("{p}: oracle finds {} annihilators", all.len()))?;
            for e in &exps {
                let i = k.classify_ideal(&Monomial::Term(e.clone())).map_err(|err| err.to_string())?;
                ensure(ann(e) == gens[i], || format!("{p}: {} misclassified", Monomial::Term(e.clone())))?;
            }
        }
        count += 1;
    }
    Ok(format!("{count} pairs"))
}

fn criterion_4() -> Check {
    let mut count = 0;
    for p in pairs(40) {
        let report = verify_iso(p).map_err(|e| format!("{p}: {e}"))?;
        ensure(report.ok(), || format!("{p}: {report:?}"))?;
        count += 1;
    }
    Ok(format!("{count} pairs"))
}

fn criterion_5() -> Check {
    let mut count = 0;
    for p in pairs(30) {
        let end = EndAlgebra::new(p);
        let alpha = end.alpha().clone();
        let h = Homology::new(&end).map_err(|e| format!("{p}: {e}"))?;
        let (ext, gd) = h.ext_and_global_dimension(4).map_err(|e| format!("{p}: {e}"))?;
        let m = alpha.len() + 1;
        for k in 0..=4 {
            for i in 0..m {
                for j in 0..m {
                    let want = lambda_ext(&alpha, k, i, j);
                    ensure(ext.get(k, i, j) == want, || {
                        format!("{p}: Ext^{k}(S_{i},S_{j}) = {} != {want}", ext.get(k, i, j))
                    })?;
                }
            }
        }
        ensure(gd == GlobalDimension::Finite(2), || format!("{p}: global dimension {gd}"))?;
        let pres = lambda_presentation(&alpha);
        let arrows = pres.quiver.arrow_counts();
        let rels = pres.relation_counts();
        for u in 0..m {
            for v in 0..m {
                ensure(arrows[u][v] == ext.get(1, v, u), || format!("{p}: arrows {u}->{v}"))?;
            }
            ensure(rels[u] == ext.get(2, u, u), || format!("{p}: relations at {u}"))?;
        }
        ensure(h.arrow_counts() == arrows, || format!("{p}: rad/rad^2 differs from the quiver"))?;
        count += 1;
    }
    Ok(format!("{count} pairs"))
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn word_set(words: impl IntoIterator<Item = Vec<usize>>) -> HashSet<Vec<usize>> {
    words.into_iter().collect()
}

fn criterion_6() -> Check {
    let p = CoprimePair::new(17, 5).unwrap();
    let alpha = expand(p);
    ensure(lambda_presentation(&alpha).to_text() == golden("lambda_17_5.txt"), || "lambda (17,5)".into())?;
    ensure(recon_presentation(&alpha).to_text() == golden("recon_17_5.txt"), || "recon (17,5)".into())?;
    let k52 = knoerrer_presentation(CoprimePair::new(5, 2).unwrap());
    ensure(k52.to_text() == golden("knoerrer_5_2.txt"), || "knoerrer (5,2)".into())?;

    let parse = |w: &str| -> Vec<usize> { w.split('z').filter(|s| !s.is_empty()).map(|s| s.parse().unwrap()).collect() };
    let want: HashSet<Vec<usize>> = golden("knoerrer_17_5_relations.txt").lines().map(parse).collect();
    ensure(word_set(KappaAlgebra::new(p).relations()) == want, || "knoerrer (17,5) relations".into())?;

    for r in 2..=10u64 {
        let k = KappaAlgebra::new(CoprimePair::new(r, 1).unwrap());
        let squares = (1..r as usize).flat_map(|i| (1..r as usize).map(move |j| vec![i, j]));
        ensure(k.l() as u64 == r - 1 && word_set(k.relations()) == word_set(squares), || format!("K_({r},1)"))?;
        let k = KappaAlgebra::new(CoprimePair::new(r, r - 1).unwrap());
        ensure(k.l() == 1 && k.relations() == vec![vec![1; r as usize]], || format!("K_({r},{})", r - 1))?;
    }

    let dot = KappaAlgebra::new(p).monomial_diagram();
    let nodes = dot.lines().filter(|l| l.trim_end().ends_with("\";") && !l.contains("->")).count();
    let root = dot.lines().filter(|l| l.trim_start().starts_with("\"1\" ->")).count();
    ensure(nodes == 17 && root == 4, || format!("diagram has {nodes} nodes, root out-degree {root}"))?;
    Ok("goldens match".into())
}

fn criterion_7() -> Check {
    let mut count = 0;
    for p in pairs(40) {
        let end = EndAlgebra::new(p);
        ensure(end.corner_matches_kappa(), || format!("{p}: corner table"))?;
        if p.r() <= 30 {
            let alpha = end.alpha().clone();
            for j in 1..=alpha.len() {
                let (tail, _) = corner_restriction(&alpha, j).map_err(|e| e.to_string())?;
                let tail_dim = EndAlgebra::from_kappa(KappaAlgebra::from_beta(dual(&tail))).dim();
                let res = restriction(&end, j).map_err(|e| e.to_string())?;
                ensure(res.corner_dim == tail_dim, || format!("{p}, j={j}: {} != {tail_dim}", res.corner_dim))?;
            }
        }
        count += 1;
    }
    Ok(format!("{count} pairs"))
}

fn criterion_8() -> Check {
    let seq = |v: &[u64]| HJSeq::new(v.to_vec()).unwrap();
    let kept = |v: &[usize]| KeptSet::new(v.to_vec()).unwrap();
    let (a22, a2) = (seq(&[2, 2]), seq(&[2]));
    ensure(singular_equivalent((&a22, &kept(&[0, 1])), (&a2, &kept(&[0]))) == Ok(true), || "first example".into())?;
    ensure(singular_equivalent((&a22, &kept(&[0, 2])), (&a2, &kept(&[0]))) == Ok(true), || "second example".into())?;

    let all: Vec<CoprimePair> = pairs(60).collect();
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let p = all[rng.gen_range(0..all.len())];
        let alpha = expand(p);
        let n = alpha.len();
        let mut ks = vec![0];
        ks.extend((1..=n).filter(|_| rng.gen_bool(0.3)));
        let d = decompose(&alpha, &kept(&ks)).map_err(|e| e.to_string())?;
        let removed: Vec<u64> =
            (1..=n).filter(|i| !ks.contains(i)).map(|i| alpha.get(i)).collect();
        ensure(d.concatenation() == removed, || format!("{p} kept {ks:?}: concatenation"))?;
        for c in &d.chunks {
            let (r, a) = oracle_evaluate(c.seq.entries());
            let ok = match c.value {
                Evaluated::Smooth => c.seq.is_empty(),
                Evaluated::Pair(q) => (q.r() as i128, q.a() as i128) == (r, a),
            };
            ensure(ok, || format!("{p} kept {ks:?}: chunk {}", c.seq))?;
        }
    }

    for p in pairs(100) {
        let g = k0_singularity(Singularity::Cyclic { r: p.r(), a: p.a() }).map_err(|e| e.to_string())?;
        ensure(g.order() as usize == KappaAlgebra::new(p).dim(), || format!("{p}: K0 order"))?;
    }

    let mut fired = 0;
    'outer: for n in 4u64.. {
        for m in 1..n {
            if 2 * m <= 1 || 2 * m >= n || n.gcd(&m) != 1 {
                continue;
            }
            let g = k0_singularity(Singularity::DihedralD { n, m }).map_err(|e| e.to_string())?;
            ensure(local_fd_obstruction(&g) == Obstruction::Obstructed, || format!("D({n},{m}) not obstructed"))?;
            fired += 1;
            if fired == 50 {
                break 'outer;
            }
        }
    }
    let lam = lambda_seq(&seq(&[4, 2, 3])).unwrap();
    ensure(lam.values == vec![17, 5, 3, 1], || "lambda".into())?;
    Ok(format!("{fired} dihedral obstructions"))
}

fn main() {
    let criteria: [(&str, fn() -> Check, u64); 8] = [
        ("duality suite, r <= 200", criterion_1, 1),
        ("KI properties, r <= 200", criterion_2, 10),
        ("ideal classification, r <= 100", criterion_3, 30),
        ("endomorphism isomorphism, r <= 40", criterion_4, 120),
        ("Ext tables and global dimension, r <= 30", criterion_5, 300),
        ("worked-example goldens", criterion_6, 1),
        ("corner and restriction, r <= 40", criterion_7, 60),
        ("equivalence calculus", criterion_8, 10),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*limit);
        let status = match (&result, over) {
            (Ok(_), false) => "PASS",
            _ => "FAIL",
        };
        let detail = match &result {
            Ok(d) if over => format!("{d}; exceeded {limit}s"),
            Ok(d) => d.clone(),
            Err(e) => e.clone(),
        };
        println!("criterion {} [{name}]: {status} ({:.2}s / {limit}s) {detail}", i + 1, elapsed.as_secs_f64());
        if status == "FAIL" {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
