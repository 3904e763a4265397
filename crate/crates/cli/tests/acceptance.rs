//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};

use mss_cli::bench::{self, BenchConfig, Phase};
use mss_cli::commands;
use mss_cli::CliError;
use mss_core::bulletin::{self, RecoveredSecret};
use mss_core::scheme::{self, Bulletin, SchemeParams, SecretSet, Variant};
use mss_core::{DealerRng, Error, FieldPrime, IlrSpec, IndexedTerms, Share, MERSENNE_61};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde_json::Value;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn prime(q: u64) -> FieldPrime {
    FieldPrime::new(q).unwrap()
}

// Plain u128 arithmetic, kept separate from the library's field type.
fn mulm(a: u64, b: u64, q: u64) -> u64 {
    (a as u128 * b as u128 % q as u128) as u64
}

fn addm(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 + b as u128) % q as u128) as u64
}

fn subm(a: u64, b: u64, q: u64) -> u64 {
    addm(a, q - b % q, q)
}

fn powm(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, b, q);
        }
        b = mulm(b, b, q);
        e >>= 1;
    }
    acc
}

fn invm(a: u64, q: u64) -> u64 {
    powm(a, q - 2, q)
}

fn signm(i: u64, q: u64) -> u64 {
    if i.is_multiple_of(2) {
        1
    } else {
        q - 1
    }
}

/// Pascal's triangle mod q, rows 0..=n.
fn pascal(n: usize, q: u64) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![0; n + 1];
        row[0] = 1 % q;
        for j in 1..=i {
            row[j] = addm(rows[i - 1][j - 1], rows[i - 1][j], q);
        }
        rows.push(row);
    }
    rows
}

/// Evaluates the interpolating polynomial through `points` at `x`.
fn lagrange_eval(points: &[(u64, u64)], x: u64, q: u64) -> u64 {
    let mut acc = 0;
    for (a, &(xa, ya)) in points.iter().enumerate() {
        let mut num = 1;
        let mut den = 1;
        for (b, &(xb, _)) in points.iter().enumerate() {
            if a != b {
                num = mulm(num, subm(x, xb, q), q);
                den = mulm(den, subm(xa, xb, q), q);
            }
        }
        acc = addm(acc, mulm(ya, mulm(num, invm(den, q), q), q), q);
    }
    acc
}

fn horner(coeffs: &[u64], x: u64, q: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| addm(mulm(acc, x, q), c, q))
}

fn random_vec(rng: &mut DealerRng, len: usize, q: u64) -> Vec<u64> {
    (0..len).map(|_| rng.gen_range(0..q)).collect()
}

fn subshadows_of(b: &Bulletin, i: usize, shares: &[Share]) -> IndexedTerms {
    let shadows = scheme::shadows_for(b, i, shares).unwrap();
    scheme::assemble_subshadows(b, i, &shadows).unwrap()
}

fn pick(all: &IndexedTerms, idx: &[usize]) -> IndexedTerms {
    idx.iter().map(|j| (*j, all[j].clone())).collect()
}

fn round_trip() -> Outcome {
    let q = prime(MERSENNE_61);
    let mut rng = DealerRng::seed_from_u64(0x5eed_0001);
    let mut recoveries = 0usize;
    for variant in Variant::ALL {
        for (n, k) in [(5usize, 2usize), (7, 4), (10, 3)] {
            for trial in 0..100 {
                let thresholds: Vec<usize> = (0..k).map(|_| rng.gen_range(2..=5)).collect();
                let params = SchemeParams::new(variant, n, thresholds.clone(), q).unwrap();
                let secrets = SecretSet::random(&params, &mut rng);
                let (shares, b) = scheme::deal(&params, &secrets, &mut rng).unwrap();
                let mut order: Vec<usize> = (1..=k).collect();
                order.shuffle(&mut rng);
                for i in order {
                    let t = thresholds[i - 1];
                    let all = subshadows_of(&b, i, &shares);
                    let mut ids: Vec<usize> = (1..=n).collect();
                    ids.shuffle(&mut rng);
                    let quorum = pick(&all, &ids[..t]);
                    let start = rng.gen_range(1..=n - t + 1);
                    let window = pick(&all, &(start..start + t).collect::<Vec<_>>());
                    let expected = secrets.get(i).unwrap();
                    let results = [
                        scheme::recover_way1_vandermonde(&b, i, &quorum),
                        scheme::recover_way1_lagrange(&b, i, &quorum),
                        scheme::recover_way2(&b, i, &window),
                    ];
                    for (m, r) in results.iter().enumerate() {
                        ensure!(
                            r.as_ref() == Ok(expected),
                            "{variant} n={n} k={k} trial {trial} secret {i} method {m}: {r:?} != {expected:?}"
                        );
                    }
                    ensure!(scheme::verify_secret(&b, i, expected), "hash check failed");
                    recoveries += 3;
                }
            }
        }
    }
    println!("    {recoveries} recoveries checked");
    Ok(())
}

fn general_term_suite() -> Outcome {
    let mut rng = DealerRng::seed_from_u64(0x5eed_0002);
    let mut cases = 0;
    for q in [97, MERSENNE_61] {
        let fq = prime(q);
        let binom = pascal(60, q);
        for t in 0..=3usize {
            for l in 0..=2usize {
                if t + l < 2 {
                    continue;
                }
                for alt in [false, true] {
                    for _ in 0..4 {
                        let dim = rng.gen_range(1..=3);
                        let c = random_vec(&mut rng, dim, q);
                        let spec = IlrSpec::new(t, l, alt, c.clone(), fq).unwrap();
                        let order = t + l - 1;
                        let initial: Vec<Vec<u64>> = (0..order).map(|_| random_vec(&mut rng, dim, q)).collect();
                        let seq = spec.forward_extend(&initial, 49).unwrap();
                        ensure!(seq.len() == 50, "sequence length {}", seq.len());
                        let u = seq.terms();

                        // Recursion, recomputed from binomials.
                        for i in 0..50 - order {
                            for s in 0..dim {
                                let mut lhs = 0;
                                for lambda in 0..=order {
                                    let sign = if alt { 1 } else { signm(lambda as u64, q) };
                                    let coeff = mulm(binom[order][lambda], sign, q);
                                    lhs = addm(lhs, mulm(coeff, u[i + order - lambda][s], q), q);
                                }
                                let mut rhs = mulm(binom[i][l], c[s], q);
                                if alt {
                                    rhs = mulm(rhs, signm(i as u64, q), q);
                                }
                                ensure!(lhs == rhs, "t={t} l={l} alt={alt} q={q}: recursion fails at {i}");
                            }
                        }

                        // Degree t+2l-1 polynomial through the first t+2l
                        // folded terms reproduces every term.
                        let m = t + 2 * l;
                        let fold = |i: usize, v: u64| if alt { mulm(v, signm(i as u64, q), q) } else { v };
                        for s in 0..dim {
                            let points: Vec<(u64, u64)> = (0..m).map(|i| (i as u64, fold(i, u[i][s]))).collect();
                            let samples: Vec<(u64, Vec<u64>)> =
                                (0..m).map(|i| (i as u64, u[i].clone())).collect();
                            let coeffs = spec.fit_general_term(&samples, s).unwrap();
                            ensure!(coeffs.len() == m, "fit returned {} coefficients", coeffs.len());
                            for (i, term) in u.iter().enumerate() {
                                let folded = fold(i, term[s]);
                                ensure!(
                                    lagrange_eval(&points, i as u64, q) == folded,
                                    "t={t} l={l} alt={alt} q={q}: term {i} off the interpolant"
                                );
                                ensure!(
                                    horner(&coeffs, i as u64, q) == folded,
                                    "t={t} l={l} alt={alt} q={q}: term {i} off the fitted polynomial"
                                );
                            }
                        }
                        cases += 1;
                    }
                }
            }
        }
    }
    println!("    {cases} sequences of length 50 checked");
    Ok(())
}

fn check_homogeneous(u: &[Vec<u64>], b: &[u64], q: u64) -> Outcome {
    let k1 = b.len();
    for i in 0..u.len() - k1 {
        for s in 0..u[0].len() {
            let mut acc = u[i + k1][s];
            for (j, &bj) in b.iter().enumerate() {
                acc = addm(acc, mulm(bj, u[i + k1 - 1 - j][s], q), q);
            }
            ensure!(acc == 0, "homogenized relation fails at index {i}");
        }
    }
    Ok(())
}

fn homogenization() -> Outcome {
    let mut rng = DealerRng::seed_from_u64(0x5eed_0003);
    let mut cases = 0;
    for q in [97, 65537, MERSENNE_61] {
        let fq = prime(q);
        // Constant right-hand side members of the recursion family.
        for t in 2..=8usize {
            for _ in 0..5 {
                let dim = rng.gen_range(1..=3);
                let spec = IlrSpec::new(t, 0, false, random_vec(&mut rng, dim, q), fq).unwrap();
                let initial: Vec<Vec<u64>> = (0..spec.order()).map(|_| random_vec(&mut rng, dim, q)).collect();
                let seq = spec.forward_extend(&initial, 49).unwrap();
                let a = &spec.recursion_coeffs()[1..];
                check_homogeneous(seq.terms(), &mss_core::ilr::to_homogeneous(a, fq), q)?;
                cases += 1;
            }
        }
        // Arbitrary constant-RHS relations generated here.
        for k in 1..=6usize {
            for _ in 0..5 {
                let a = random_vec(&mut rng, k, q);
                let c = rng.gen_range(0..q);
                let mut u: Vec<Vec<u64>> = (0..k).map(|_| vec![rng.gen_range(0..q)]).collect();
                while u.len() < 50 {
                    let i = u.len() - k;
                    let mut next = c;
                    for (j, &aj) in a.iter().enumerate() {
                        next = subm(next, mulm(aj, u[i + k - 1 - j][0], q), q);
                    }
                    u.push(vec![next]);
                }
                check_homogeneous(&u, &mss_core::ilr::to_homogeneous(&a, fq), q)?;
                cases += 1;
            }
        }
    }
    println!("    {cases} relations checked");
    Ok(())
}

fn figure_counts() -> Outcome {
    let golden = fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/figure1.csv"))
        .map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_mss"))
        .args(["counts", "--figure1"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "counts --figure1 exited with {}", out.status);
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    ensure!(stdout == golden, "output differs from golden file:\n{stdout}");

    let mut lines = golden.lines();
    ensure!(lines.next() == Some("t,k,n,HD,LH,SM,PE,OS1&2,OS3&4"), "bad header");
    let tuples = [(3u64, 4u64, 7u64), (6, 7, 10), (8, 9, 12), (11, 12, 14), (12, 13, 14)];
    for ((t, k, n), line) in tuples.into_iter().zip(lines.by_ref()) {
        let expected = [
            t,
            k,
            n,
            k * n,
            k * (n - t),
            k * (n - t + 2) + 1,
            2 * (n + k) + 1,
            k * (n - t + 6) + (n + 1),
            k * (n + 4) + (n + 2),
        ];
        let row: Vec<u64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        ensure!(row == expected, "row {line} != {expected:?}");
    }
    ensure!(lines.next().is_none(), "extra rows");
    Ok(())
}

fn check_solution(report: &scheme::ProbeReport, x: &[u64], q: u64) -> Outcome {
    let m = &report.system;
    for row in 0..m.rows() {
        let lhs = (0..m.cols()).fold(0, |acc, c| addm(acc, mulm(m.get(row, c), x[c], q), q));
        ensure!(lhs == report.rhs[row], "exhibited solution violates row {row}");
    }
    Ok(())
}

fn privacy_probe() -> Outcome {
    let q = MERSENNE_61;
    let mut rng = DealerRng::seed_from_u64(0x5eed_0005);
    for instance in 0..50 {
        let variant = if instance % 2 == 0 { Variant::S1 } else { Variant::S2 };
        let n = rng.gen_range(4..=10);
        let k = rng.gen_range(1..=3);
        let thresholds: Vec<usize> = (0..k).map(|_| rng.gen_range(2..=n.min(6))).collect();
        let params = SchemeParams::new(variant, n, thresholds.clone(), prime(q)).unwrap();
        let secrets = SecretSet::random(&params, &mut rng);
        let (shares, b) = scheme::deal(&params, &secrets, &mut rng).unwrap();
        for i in 1..=k {
            let t = thresholds[i - 1];
            let all = subshadows_of(&b, i, &shares);
            let mut ids: Vec<usize> = (1..=n).collect();
            ids.shuffle(&mut rng);

            let below = scheme::privacy_rank_probe(&b, i, &pick(&all, &ids[..t - 1])).unwrap();
            ensure!(below.len() == t, "one report per component expected");
            for (s, report) in below.iter().enumerate() {
                ensure!(report.free_dims >= 1, "instance {instance} secret {i} component {s}: determined");
                ensure!(report.solutions.len() == 2, "two solutions expected");
                let a0: BTreeSet<u64> = report.constant_terms().into_iter().collect();
                ensure!(a0.len() == 2, "instance {instance}: exhibited solutions share A0");
                for x in &report.solutions {
                    check_solution(report, x, q)?;
                }
            }

            let full = scheme::privacy_rank_probe(&b, i, &pick(&all, &ids[..t])).unwrap();
            for (s, report) in full.iter().enumerate() {
                ensure!(report.free_dims == 0, "instance {instance}: full quorum underdetermined");
                ensure!(
                    report.constant_terms() == vec![secrets.get(i).unwrap()[s]],
                    "instance {instance}: full quorum A0 is not the secret"
                );
                check_solution(report, &report.solutions[0], q)?;
            }
        }
    }
    Ok(())
}

fn tamper_detection() -> Outcome {
    let mut rng = DealerRng::seed_from_u64(0x5eed_0006);
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut sink = Vec::new();
    for trial in 0..100 {
        let variant = Variant::ALL[trial % 4];
        let n = rng.gen_range(3..=8);
        let thresholds: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(2..=n)).collect();
        let params = SchemeParams::new(variant, n, thresholds.clone(), prime(MERSENNE_61)).unwrap();
        let secrets = SecretSet::random(&params, &mut rng);
        let (shares, b) = scheme::deal(&params, &secrets, &mut rng).unwrap();
        let id = bulletin::deal_id(&b.setup());
        let bpath = dir.path().join("bulletin.json");
        bulletin::write_atomic(&bpath, &bulletin::encode_bulletin(&b)).unwrap();

        // Every single-bit flip of every share is rejected.
        for s in &shares {
            for bit in 0..s.len() {
                let mut bad = s.clone();
                bad.bits[bit] ^= 1;
                let ok = mss_core::ajtai::verify_commitment(&b.f, &bad, b.commitment(s.owner).unwrap(), b.params.q())
                    .unwrap();
                ensure!(!ok, "trial {trial}: flipped bit {bit} of share {} accepted", s.owner);
            }
        }
        // One flip per trial through the command path.
        let j = rng.gen_range(0..n);
        let spath = dir.path().join("share.json");
        bulletin::write_atomic(&spath, &bulletin::encode_share(&shares[j], Some(&id))).unwrap();
        ensure!(commands::verify_share(&bpath, &spath, &mut sink).is_ok(), "honest share rejected");
        let mut bad = shares[j].clone();
        let bit = rng.gen_range(0..bad.len());
        bad.bits[bit] ^= 1;
        bulletin::write_atomic(&spath, &bulletin::encode_share(&bad, Some(&id))).unwrap();
        ensure!(
            matches!(commands::verify_share(&bpath, &spath, &mut sink), Err(CliError::Verification(_))),
            "trial {trial}: tampered share file accepted"
        );

        // Every secret: each single altered component is rejected.
        let q = b.params.q().modulus();
        for i in 1..=thresholds.len() {
            let secret = secrets.get(i).unwrap();
            for s in 0..secret.len() {
                let mut bad = secret.clone();
                bad[s] = addm(bad[s], rng.gen_range(1..q), q);
                ensure!(!scheme::verify_secret(&b, i, &bad), "trial {trial}: altered component accepted");
            }
            let i = rng.gen_range(1..=thresholds.len());
            let mut candidate = secrets.get(i).unwrap().clone();
            let s = rng.gen_range(0..candidate.len());
            candidate[s] = addm(candidate[s], rng.gen_range(1..q), q);
            let cpath = dir.path().join("candidate.json");
            let rec = RecoveredSecret {
                secret_index: i,
                secret: candidate,
                verified: true,
            };
            bulletin::write_atomic(&cpath, &bulletin::encode_recovered(&rec)).unwrap();
            ensure!(
                matches!(commands::verify_secret(&bpath, i, &cpath, &mut sink), Err(CliError::Verification(_))),
                "trial {trial}: altered candidate file accepted"
            );
        }
    }
    Ok(())
}

fn timing_order() -> Outcome {
    let cfg = BenchConfig {
        variant: Variant::S1,
        n: 64,
        k: 1,
        thresholds: vec![32],
        trials: 31,
        q: FieldPrime::default(),
        seed: 0x5eed_0007,
    };
    let rows = bench::run(&cfg).map_err(|e| e.to_string())?;
    ensure!(rows.iter().all(|r| r.ok), "a timed phase produced a wrong result");
    let way1 = bench::median_for(&rows, 32, Phase::RecoveryVandermonde).unwrap();
    let way2 = bench::median_for(&rows, 32, Phase::RecoveryBackward).unwrap();
    println!("    median backward {way2} ns, median vandermonde {way1} ns over {} trials", cfg.trials);
    ensure!(way2 < way1, "backward median {way2} ns is not below vandermonde median {way1} ns");
    Ok(())
}

type Mutation = (&'static str, fn(&mut Value), fn(&Error) -> bool);

fn is_parse(e: &Error) -> bool {
    matches!(e, Error::Parse(_))
}

fn is_validation(e: &Error) -> bool {
    matches!(e, Error::Validation(_))
}

fn is_version(e: &Error) -> bool {
    matches!(e, Error::UnsupportedVersion(_))
}

fn first_residue<'a>(v: &'a mut Value, path: &str) -> &'a mut Value {
    let mut cur = v.pointer_mut(path).expect("path exists");
    while let Value::Array(items) = cur {
        cur = &mut items[0];
    }
    cur
}

fn set_q(v: &mut Value, path: &str) {
    let q = v["params"]["q"].clone();
    *first_residue(v, path) = q;
}

fn pop(v: &mut Value, path: &str) {
    v.pointer_mut(path).unwrap().as_array_mut().unwrap().pop();
}

const BULLETIN_MUTATIONS: [Mutation; 22] = [
    ("format_version", |v| v["format_version"] = 2.into(), is_version),
    ("unknown field", |v| v["extra"] = 1.into(), is_parse),
    ("missing field", |v| drop(v.as_object_mut().unwrap().remove("extras")), is_parse),
    ("invalid JSON type", |v| v["params"]["n"] = "five".into(), is_parse),
    ("variant", |v| v["params"]["variant"] = "s9".into(), is_parse),
    ("modulus not prime", |v| v["params"]["q"] = "100".into(), is_validation),
    ("modulus not decimal", |v| v["params"]["q"] = "0x61".into(), is_parse),
    ("threshold out of range", |v| v["params"]["thresholds"][0] = 1.into(), is_validation),
    ("k disagrees with thresholds", |v| v["params"]["k"] = 99.into(), is_validation),
    ("share length below threshold", |v| v["params"]["r"] = 1.into(), is_validation),
    ("G residue unreduced", |v| set_q(v, "/g/0/data"), is_validation),
    ("G residue not decimal", |v| *first_residue(v, "/g/0/data") = "-1".into(), is_parse),
    ("G shape", |v| v["g"][0]["rows"] = 1000.into(), is_validation),
    ("F shape", |v| pop(v, "/f/data"), is_validation),
    ("commitment owner", |v| v["commitments"][0]["owner"] = 2.into(), is_validation),
    ("commitment length", |v| pop(v, "/commitments/0/h"), is_validation),
    ("secret hash hex", |v| v["secret_hashes"][0] = "zz".into(), is_parse),
    ("secret hash length", |v| v["secret_hashes"][0] = "abcd".into(), is_validation),
    ("constant length", |v| pop(v, "/constants/0"), is_validation),
    ("offset vector length", |v| pop(v, "/offsets/0/0"), is_validation),
    ("offset count", |v| pop(v, "/offsets/0"), is_validation),
    ("extra unreduced", |v| set_q(v, "/extras"), is_validation),
];

fn mutate(bytes: &[u8], f: fn(&mut Value)) -> Vec<u8> {
    let mut v: Value = serde_json::from_slice(bytes).unwrap();
    f(&mut v);
    serde_json::to_vec(&v).unwrap()
}

fn serialization() -> Outcome {
    let mut rng = DealerRng::seed_from_u64(0x5eed_0008);
    for trial in 0..400 {
        let variant = Variant::ALL[trial % 4];
        let q = prime(*[97u64, 65537, MERSENNE_61].choose(&mut rng).unwrap());
        let n = rng.gen_range(2..=9);
        let thresholds: Vec<usize> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(2..=n)).collect();
        let params = SchemeParams::new(variant, n, thresholds, q).unwrap();
        let secrets = SecretSet::random(&params, &mut rng);
        let (shares, b) = scheme::deal(&params, &secrets, &mut rng).unwrap();

        let bytes = bulletin::encode_bulletin(&b);
        let decoded = bulletin::decode_bulletin(&bytes).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure!(decoded == b, "trial {trial}: bulletin round trip differs");
        ensure!(bulletin::encode_bulletin(&decoded) == bytes, "trial {trial}: encoding not canonical");

        let id = bulletin::deal_id(&b.setup());
        for s in &shares {
            let file = bulletin::encode_share(s, Some(&id));
            ensure!(bulletin::decode_share_for(&file, &b).as_ref() == Ok(s), "share round trip");
            let bare = bulletin::decode_share(&bulletin::encode_share(s, None)).unwrap();
            ensure!(bare.share == *s && bare.deal_id.is_none(), "unbound share round trip");
        }
        let sb = bulletin::encode_secrets(secrets.as_slice());
        ensure!(bulletin::decode_secrets(&sb, q).unwrap() == secrets.as_slice(), "secrets round trip");

        if trial < 8 {
            for (name, f, expect) in BULLETIN_MUTATIONS {
                match bulletin::decode_bulletin(&mutate(&bytes, f)) {
                    Err(e) if expect(&e) => {}
                    other => return Err(format!("bulletin mutation {name:?}: got {other:?}")),
                }
            }
            share_mutations(&b, &shares[0], &id)?;
            let qs = q.modulus().to_string();
            let unreduced = |v: &mut Value, key: &str, q: &str| v[key][0][0] = q.into();
            let mut v: Value = serde_json::from_slice(&sb).unwrap();
            unreduced(&mut v, "secrets", &qs);
            let err = bulletin::decode_secrets(&serde_json::to_vec(&v).unwrap(), q).unwrap_err();
            ensure!(is_validation(&err), "unreduced secret: {err:?}");
        }
    }
    Ok(())
}

fn share_mutations(b: &Bulletin, share: &Share, id: &str) -> Outcome {
    let bytes = bulletin::encode_share(share, Some(id));
    let cases: [Mutation; 7] = [
        ("format_version", |v| v["format_version"] = 7.into(), is_version),
        ("unknown field", |v| v["owner_name"] = "x".into(), is_parse),
        ("bits not hex", |v| v["bits"] = "g".repeat(v["bits"].as_str().unwrap().len()).into(), is_parse),
        ("bits too long", |v| v["bits"] = format!("0{}", v["bits"].as_str().unwrap()).into(), is_validation),
        ("owner zero", |v| v["owner"] = 0.into(), is_validation),
        ("deal id malformed", |v| v["deal_id"] = "abc".into(), is_validation),
        ("share length", |v| v["r"] = 0.into(), is_validation),
    ];
    for (name, f, expect) in cases {
        match bulletin::decode_share_for(&mutate(&bytes, f), b) {
            Err(e) if expect(&e) => {}
            other => return Err(format!("share mutation {name:?}: got {other:?}")),
        }
    }
    let other_deal = "0".repeat(64);
    ensure!(
        bulletin::decode_share_for(&bulletin::encode_share(share, Some(&other_deal)), b) == Err(Error::WrongDeal),
        "foreign deal id accepted"
    );
    // Nonzero padding bits above r.
    let odd = Share::new(1, vec![1; 17]).unwrap();
    let padded = mutate(&bulletin::encode_share(&odd, None), |v| {
        let bits = v["bits"].as_str().unwrap().to_owned();
        v["bits"] = format!("f{}", &bits[1..]).into();
    });
    ensure!(
        matches!(bulletin::decode_share(&padded), Err(Error::Validation(_))),
        "nonzero padding accepted"
    );
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("round-trip recovery, all variants and methods", round_trip),
        ("general term of forward sequences", general_term_suite),
        ("homogenization of constant right-hand sides", homogenization),
        ("public-value counts golden file", figure_counts),
        ("privacy rank probe", privacy_probe),
        ("tamper detection", tamper_detection),
        ("backward recovery faster than Vandermonde at t=32", timing_order),
        ("serialization round trip and rejection", serialization),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, (name, f)) in criteria.into_iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("PASS {}: {name}", n + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {}: {name}: {e}", n + 1);
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
