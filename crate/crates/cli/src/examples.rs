//! Reference results checked against files in the golden directory.
//!
//! Each example recomputes its result from scratch and compares it with the
//! stored expectation; editing a golden file makes the matching example fail.

use std::fs;
use std::path::{Path, PathBuf};

use nullca_core::ca::{matrix_to_text, Pattern, RuleSpec};
use nullca_core::charpoly::{eval_real, g_poly, gcd_degree_report, real_roots};
use nullca_core::field::{roots_with_multiplicity, ExtElem, ExtField, Field, PolyRing, PrimeField};
use nullca_core::structmat::FMatrix;
use nullca_core::{oracle, spectral};

pub type Outcome = std::result::Result<(), String>;

pub struct Example {
    pub id: &'static str,
    pub description: &'static str,
    run: fn(&Path) -> Outcome,
}

impl Example {
    pub fn run(&self, golden_dir: &Path) -> Outcome {
        (self.run)(golden_dir)
    }
}

pub fn default_golden_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/goldens"))
}

pub fn catalog() -> Vec<Example> {
    vec![
        Example {
            id: "all-ones-2x2x2-spectrum",
            description: "2x2x2 all-ones rule, p in {5, 7, 11}: eigenvalues 3, 1, 1, 1, -1, -1, -1, -3",
            run: all_ones_spectrum,
        },
        Example {
            id: "all-ones-2x2x2-inverse",
            description: "2x2x2 all-ones rule, p in {5, 7, 11}: exact inverse transition matrix",
            run: all_ones_inverse,
        },
        Example {
            id: "all-ones-2x2x2-p3",
            description: "2x2x2 all-ones rule is reversible for prime p <= 31 exactly when p != 3",
            run: all_ones_p3,
        },
        Example {
            id: "all-ones-2x2x2-inverse-spectrum",
            description: "2x2x2 all-ones rule, p in {5, 7, 11, 13}: inverse eigenvalues 1, 1, 1, -1, -1, -1, 1/3, -1/3",
            run: inverse_spectrum,
        },
        Example {
            id: "gf9-splitting",
            description: "4x4x4 all-ones rule over p = 3: roots in GF(9) = GF(3)[a]/(a^2+1), irreversible",
            run: gf9_splitting,
        },
        Example {
            id: "p5-reversible-triples",
            description: "4x4x4 symmetric rules over p = 5: reversible scale triples",
            run: p5_triples,
        },
        Example {
            id: "p5-block-inverses",
            description: "4x4x4 over p = 5 with scales (1, 1, 4): inverses of the four diagonal Jordan blocks",
            run: p5_block_inverses,
        },
        Example {
            id: "gcd-degrees",
            description: "deg gcd(g_k, g_l) = gcd(k+1, l+1) - 1 over Q for 1 <= k < l <= 40",
            run: gcd_degrees,
        },
        Example {
            id: "gcd-g4-g78",
            description: "gcd(g_4, g_78) over GF(3) and over Q",
            run: gcd_g4_g78,
        },
        Example {
            id: "real-roots",
            description: "g_j(2 cos(r pi / (j+1))) vanishes for j <= 50",
            run: real_roots_vanish,
        },
        Example {
            id: "cube-demo",
            description: "4x4x4 demo over p = 5: 30 steps from the stored seed, pattern and PGM slices",
            run: cube_demo,
        },
    ]
}

fn read_golden(dir: &Path, name: &str) -> std::result::Result<String, String> {
    let path = dir.join(name);
    fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ints(text: &str) -> std::result::Result<Vec<i64>, String> {
    text.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| format!("not an integer: {t:?}")))
        .collect()
}

fn base_values(field: &ExtField, elems: &[ExtElem]) -> std::result::Result<Vec<u64>, String> {
    elems
        .iter()
        .map(|e| {
            field
                .to_base(e)
                .ok_or_else(|| format!("{} is not in the prime field", field.render(e)))
        })
        .collect()
}

fn sorted_mod(values: &[i64], f: &PrimeField) -> Vec<u64> {
    let mut v: Vec<u64> = values.iter().map(|&x| f.reduce(x)).collect();
    v.sort();
    v
}

fn all_ones_spectrum(dir: &Path) -> Outcome {
    let expected = ints(&read_golden(dir, "spectrum_2x2x2.txt")?)?;
    for p in [5, 7, 11] {
        let rule = RuleSpec::all_ones(p, vec![2, 2, 2]).map_err(fail)?;
        let spectra = spectral::axis_spectra(&rule).map_err(fail)?;
        let mut got = base_values(&spectra.field, &spectral::eigenvalue_multiset(&spectra))?;
        got.sort();
        let want = sorted_mod(&expected, &rule.field());
        if got != want {
            return Err(format!("p = {p}: eigenvalues {got:?}, expected {want:?}"));
        }
    }
    Ok(())
}

fn all_ones_inverse(dir: &Path) -> Outcome {
    for p in [5, 7, 11] {
        let rule = RuleSpec::all_ones(p, vec![2, 2, 2]).map_err(fail)?;
        let inv = spectral::invert_t(&rule).map_err(fail)?;
        let golden = read_golden(dir, &format!("inverse_2x2x2_p{p}.txt"))?;
        if matrix_to_text(&inv) != golden {
            return Err(format!("p = {p}: inverse differs from inverse_2x2x2_p{p}.txt"));
        }
    }
    Ok(())
}

fn all_ones_p3(_dir: &Path) -> Outcome {
    for p in (2..=31).filter(|&p| nullca_core::field::is_prime(p)) {
        let rule = RuleSpec::all_ones(p, vec![2, 2, 2]).map_err(fail)?;
        let decision = spectral::is_reversible(&rule).map_err(fail)?;
        if decision.reversible != (p != 3) {
            return Err(format!("p = {p}: reversible = {}", decision.reversible));
        }
        if !decision.reversible && decision.witness.is_none() {
            return Err(format!("p = {p}: irreversible without a witness"));
        }
    }
    Ok(())
}

fn inverse_spectrum(_dir: &Path) -> Outcome {
    for p in [5, 7, 11, 13] {
        let rule = RuleSpec::all_ones(p, vec![2, 2, 2]).map_err(fail)?;
        let f = rule.field();
        let inv = spectral::invert_t(&rule).map_err(fail)?;
        let third = f.inv(&3).map_err(fail)?;
        let mut want = vec![1, 1, 1, p - 1, p - 1, p - 1, third, f.neg(&third)];
        want.sort();
        let ext = ExtField::trivial(f);
        let roots = roots_with_multiplicity(&oracle::char_poly(&inv).map_err(fail)?, &ext).map_err(fail)?;
        let expanded: Vec<ExtElem> = roots
            .iter()
            .flat_map(|(r, k)| std::iter::repeat_n(r.clone(), *k))
            .collect();
        let mut got = base_values(&ext, &expanded)?;
        got.sort();
        if got != want {
            return Err(format!("p = {p}: inverse eigenvalues {got:?}, expected {want:?}"));
        }
    }
    Ok(())
}

fn gf9_splitting(dir: &Path) -> Outcome {
    let golden = read_golden(dir, "gf9_roots.txt")?;
    let mut lines = golden.lines();
    let modulus: Vec<u64> = ints(lines.next().unwrap_or_default())?
        .into_iter()
        .map(|v| v as u64)
        .collect();
    let want: Vec<Vec<u64>> = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| ints(l).map(|v| v.into_iter().map(|c| c as u64).collect()))
        .collect::<std::result::Result<_, _>>()?;
    let rule = RuleSpec::all_ones(3, vec![4, 4, 4]).map_err(fail)?;
    let spectra = spectral::axis_spectra(&rule).map_err(fail)?;
    if spectra.field.modulus().coeffs() != modulus.as_slice() {
        return Err(format!(
            "modulus {:?}, expected {modulus:?}",
            spectra.field.modulus().coeffs()
        ));
    }
    for axis in &spectra.axes {
        let got: Vec<Vec<u64>> = axis
            .roots
            .iter()
            .map(|(r, _)| {
                let mut c = r.coeffs().to_vec();
                c.resize(spectra.field.k(), 0);
                c
            })
            .collect();
        if got != want {
            return Err(format!("axis {}: roots {got:?}, expected {want:?}", axis.axis + 1));
        }
    }
    let decision = spectral::decide(&spectra);
    if decision.reversible || decision.witness.is_none() {
        return Err("expected an irreversible decision with a witness".into());
    }
    Ok(())
}

/// Scales `(k_ab, k_cd, k_ef)` of the three axes; the first axis carries `k_cd`.
pub fn scaled_cube_rule(p: u64, m: usize, k_ab: u64, k_cd: u64, k_ef: u64) -> nullca_core::Result<RuleSpec> {
    RuleSpec::nearest(p, vec![m; 3], 0, &[(k_cd, k_cd), (k_ab, k_ab), (k_ef, k_ef)])
}

/// Reversible scale triples over `p` for `m x m x m`, as sorted triples in
/// ascending order without repeats.
pub fn reversible_triples(p: u64, m: usize) -> nullca_core::Result<Vec<[u64; 3]>> {
    let mut out = Vec::new();
    for a in 1..p {
        for b in 1..p {
            for e in 1..p {
                if spectral::is_reversible(&scaled_cube_rule(p, m, a, b, e)?)?.reversible {
                    let mut t = [a, b, e];
                    t.sort();
                    out.push(t);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn p5_triples(dir: &Path) -> Outcome {
    let want: Vec<Vec<i64>> = read_golden(dir, "p5_triples.txt")?
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(ints)
        .collect::<std::result::Result<_, _>>()?;
    let got: Vec<Vec<i64>> = reversible_triples(5, 4)
        .map_err(fail)?
        .iter()
        .map(|t| t.iter().map(|&v| v as i64).collect())
        .collect();
    if got != want {
        return Err(format!("reversible triples {got:?}, expected {want:?}"));
    }
    Ok(())
}

/// Inverses of the diagonal blocks `k_cd J + (k_ab t_j + k_ef t_i) I` of the
/// Jordan form of a scaled cube rule, where `J` is the Jordan form of the
/// unscaled axis and `t` runs over its distinct eigenvalues; row-major in
/// `(i, j)`.
pub fn diagonal_block_inverses(
    p: u64,
    m: usize,
    k_ab: u64,
    k_cd: u64,
    k_ef: u64,
) -> nullca_core::Result<Vec<FMatrix<ExtField>>> {
    let gj = spectral::generalized_jordan(&RuleSpec::all_ones(p, vec![m])?)?;
    let f = gj.field.clone();
    let axis = &gj.axes[0];
    let mut ts: Vec<ExtElem> = axis.blocks.iter().map(|(t, _)| t.clone()).collect();
    ts.dedup();
    let j = axis.j.scale(&f.from_base(k_cd));
    let (ab, ef) = (f.from_base(k_ab), f.from_base(k_ef));
    let mut out = Vec::new();
    for ti in &ts {
        for tj in &ts {
            let shift = f.add(&f.mul(&ab, tj), &f.mul(&ef, ti));
            out.push(oracle::inverse(&j.add_scalar(&shift)?)?);
        }
    }
    Ok(out)
}

fn p5_block_inverses(dir: &Path) -> Outcome {
    let want = read_golden(dir, "p5_block_inverses.txt")?;
    let blocks = diagonal_block_inverses(5, 4, 1, 1, 4).map_err(fail)?;
    let mut got = String::new();
    for b in &blocks {
        let base = b.to_base().ok_or("block inverse leaves the prime field")?;
        got.push_str(&base.to_string());
        got.push('\n');
    }
    if got != want {
        return Err(format!("block inverses differ from p5_block_inverses.txt:\n{got}"));
    }
    Ok(())
}

fn gcd_degrees(_dir: &Path) -> Outcome {
    for l in 2..=40 {
        for k in 1..l {
            let r = gcd_degree_report(k, l);
            if r.actual != r.predicted {
                return Err(format!("k = {k}, l = {l}: degree {} vs {}", r.actual, r.predicted));
            }
        }
    }
    Ok(())
}

fn gcd_g4_g78(dir: &Path) -> Outcome {
    let want = read_golden(dir, "gcd_g4_g78.txt")?;
    let f = PrimeField::new(3).map_err(fail)?;
    let ring = PolyRing::new(f);
    let one = f.one();
    let h = ring.gcd(&g_poly(&f, 4, &one).coeffs, &g_poly(&f, 78, &one).coeffs);
    let r = gcd_degree_report(4, 78);
    let render = |c: &[u64]| c.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    let got = format!("mod3 {}\nrational-degree {}\n", render(h.coeffs()), r.actual);
    if got != want {
        return Err(format!("got {got:?}, expected {want:?}"));
    }
    Ok(())
}

fn real_roots_vanish(_dir: &Path) -> Outcome {
    let mut worst = 0.0f64;
    for j in 1..=50 {
        for x in real_roots(j) {
            worst = worst.max(eval_real(j, x).abs());
        }
    }
    if worst < 1e-9 {
        Ok(())
    } else {
        Err(format!("max |g_j| = {worst:e}"))
    }
}

pub const CUBE_DEMO_STEPS: usize = 30;

fn cube_demo(dir: &Path) -> Outcome {
    let demo = dir.join("cube_demo");
    let rule = RuleSpec::from_json(&read_golden(&demo, "rule.json")?).map_err(fail)?;
    let seed = Pattern::from_text(&read_golden(&demo, "seed.txt")?).map_err(fail)?;
    let out = crate::evolve(&rule, &seed, CUBE_DEMO_STEPS).map_err(fail)?;
    if out.to_text() != read_golden(&demo, "step30.txt")? {
        return Err("evolved pattern differs from step30.txt".into());
    }
    for (i, slice) in out.pgm_slices().map_err(fail)?.iter().enumerate() {
        let name = format!("slice_{:02}.pgm", i + 1);
        if *slice != read_golden(&demo, &name)? {
            return Err(format!("{name} differs"));
        }
    }
    let back = crate::reverse(
        &rule,
        &out,
        CUBE_DEMO_STEPS,
        None,
        nullca_core::structmat::DEFAULT_SIZE_CAP,
    )
    .map_err(fail)?;
    if back != seed {
        return Err("reversing 30 steps does not restore the seed".into());
    }
    Ok(())
}

/// Run the selected examples (all when `only` is empty) in catalog order.
pub fn run_all(golden_dir: &Path, only: &[String]) -> Vec<(&'static str, Outcome)> {
    catalog()
        .into_iter()
        .filter(|e| only.is_empty() || only.iter().any(|id| id == e.id))
        .map(|e| (e.id, e.run(golden_dir)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = catalog().iter().map(|e| e.id).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn missing_golden_dir_fails_file_backed_examples() {
        let results = run_all(Path::new("/nonexistent/goldens"), &["gf9-splitting".to_string()]);
        assert_eq!(results.len(), 1);
        assert!(results[0].1.as_ref().unwrap_err().contains("cannot read"));
    }
}
