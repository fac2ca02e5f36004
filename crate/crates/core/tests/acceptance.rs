//! Acceptance gate: one PASS/FAIL line per criterion, derived from the
//! verification suites run under thread pools of 1 and 8 workers.

use hardyx::verify::{run_suite, Check, Suite, SuiteReport};
use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

fn run_all(threads: usize) -> HashMap<Suite, SuiteReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| {
        Suite::ALL
            .into_iter()
            .map(|s| {
                let t = Instant::now();
                let r = run_suite(s).unwrap_or_else(|e| panic!("suite {s}: {e}"));
                eprintln!("  [{threads} thread(s)] {s}: {} checks, {:.1}s", r.checks.len(), t.elapsed().as_secs_f64());
                (s, r)
            })
            .collect()
    })
}

struct Criterion {
    id: usize,
    title: &'static str,
    checks: Vec<Check>,
    note: Option<String>,
}

impl Criterion {
    fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    fn print(&self) {
        let failed: Vec<&Check> = self.checks.iter().filter(|c| !c.pass).collect();
        println!(
            "{} criterion {:>2}: {} ({} checks, {} failed)",
            if self.pass() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checks.len(),
            failed.len()
        );
        for c in failed {
            println!("       {}: measured {:e}, tolerance {:e}", c.name, c.measured, c.tolerance);
        }
        if let Some(n) = &self.note {
            println!("       note: {n}");
        }
    }
}

fn select(r: &SuiteReport, keep: impl Fn(&str) -> bool) -> Vec<Check> {
    r.checks.iter().filter(|c| keep(&c.name)).cloned().collect()
}

fn all(reports: &HashMap<Suite, SuiteReport>, suites: &[Suite]) -> Vec<Check> {
    suites.iter().flat_map(|s| reports[s].checks.clone()).collect()
}

/// Decay rate `tanh(2t)` of `e^{-b|x|²/2}` on ℝ² from its closed-form
/// levels `‖P_{2m} f‖² = 4π/(1+b)² · ((1-b)/(1+b))^{2m}`, with
/// `‖P_k f‖ ∝ e^{-(2k+2)t/2}`.
fn gaussian_rate_oracle(b: f64) -> f64 {
    let level = |m: i32| (4.0 * std::f64::consts::PI / (1.0 + b).powi(2) * ((1.0 - b) / (1.0 + b)).powi(2 * m)).sqrt();
    // per unit k the norm falls by e^{-t}
    let (k1, k2) = (20, 40);
    let t = (level(k1 / 2) / level(k2 / 2)).ln() / (k2 - k1) as f64;
    (2.0 * t).tanh()
}

fn main() -> ExitCode {
    let start = Instant::now();
    eprintln!("running all suites with 1 thread");
    let one = run_all(1);
    eprintln!("running all suites with 8 threads");
    let eight = run_all(8);

    let ex44 = &one[&Suite::Example44];
    let route_table = |n: &str| n.starts_with("direct:") || n.starts_with("wigner:");
    let oracle: Vec<String> = hardyx::verify::GAUSSIAN_B
        .iter()
        .map(|&b| format!("b={b}: tanh(2t)={:.6}", gaussian_rate_oracle(b)))
        .collect();

    let mut determinism = Vec::new();
    for s in Suite::ALL {
        let a = one[&s].to_json().expect("json");
        let b = eight[&s].to_json().expect("json");
        determinism.push(Check::below(format!("{s}: JSON bytes differ between 1 and 8 threads"), if a == b { 0.0 } else { 1.0 }, 0.0));
    }

    let criteria = vec![
        Criterion {
            id: 1,
            title: "example44 projection norms, direct and Wigner routes, spot values",
            checks: select(ex44, route_table),
            note: None,
        },
        Criterion {
            id: 2,
            title: "example44 closed forms of f-hat and V(f,f) on |z| <= 6",
            checks: select(ex44, |n| !route_table(n)),
            note: None,
        },
        Criterion {
            id: 3,
            title: "eigenrelations (Hermite orthonormality, Fourier, Hankel, symplectic Fourier)",
            checks: all(&one, &[Suite::Orthonormality, Suite::FourierEigen, Suite::HankelEigen]),
            note: None,
        },
        Criterion {
            id: 4,
            title: "Wigner identities and three-route projection-norm equivalence",
            checks: all(&one, &[Suite::WignerIdentity, Suite::Routes]),
            note: None,
        },
        Criterion {
            id: 5,
            title: "U_delta routes, Hankel relation, Cholewinski moments",
            checks: all(&one, &[Suite::Udelta, Suite::Cholewinski]),
            note: None,
        },
        Criterion {
            id: 6,
            title: "radialization chain and the example44 witness",
            checks: all(&one, &[Suite::Radialization]),
            note: None,
        },
        Criterion {
            id: 7,
            title: "decay-rate recovery and the tanh(2t) >= a/2 floor",
            checks: all(&one, &[Suite::Theorems]),
            note: Some(format!(
                "independent closed-form oracle for e^(-b|x|^2/2): {} (= 2b/(1+b^2))",
                oracle.join(", ")
            )),
        },
        Criterion {
            id: 8,
            title: "vector Bargmann Taylor norms (Cauchy vs formula, formula vs direct)",
            checks: all(&one, &[Suite::VectorBargmann]),
            note: None,
        },
        Criterion {
            id: 9,
            title: "c(k,k) = 1 and bounded growth of c(k,m)/k^((n-1)/2)",
            checks: all(&one, &[Suite::Lemma55]),
            note: None,
        },
        Criterion {
            id: 10,
            title: "suite outputs byte-identical with 1 and 8 threads",
            checks: determinism,
            note: None,
        },
    ];

    println!();
    for c in &criteria {
        c.print();
    }
    let passed = criteria.iter().filter(|c| c.pass()).count();
    println!("\n{passed}/{} criteria passed in {:.0}s", criteria.len(), start.elapsed().as_secs_f64());
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
