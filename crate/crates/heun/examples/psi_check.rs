use heun::c64;
use heun::evaluate::{ode_residual, EvalOptions};
use heun::params::{CheParams, EquationParams};
use heun::solve::{solve_nu_seeded, DEFAULT_WINDOW};
use heun::transform::{apply_t, TRule};

fn main() {
    let p = CheParams::new(c64(0.7, 0.1), c64(1.3, -0.2), c64(0.4, 0.3), c64(1.0, 0.0), c64(0.9, 0.2), c64(-0.5, 0.4)).unwrap();
    let (p4, _) = apply_t(TRule::T4, &p).unwrap();
    println!("T4 params: B1={:.3} B2={:.3} B3={:.3} omega={:.3} eta={:.3}", p4.b1, p4.b2, p4.b3, p4.omega, p4.eta);
    let params4 = EquationParams::Che(p4);
    let solved = solve_nu_seeded(&params4, 2, &[c64(0.3, 0.1), c64(0.6, -0.1)], DEFAULT_WINDOW).unwrap();
    println!("set-2@T4params nu = {:.6}, cf residual {:.2e}", solved.report.root, solved.report.residual);
    let m = solved.set.validated_member();
    let opts = EvalOptions::default();
    for j in 0..5 {
        let w = num_complex::Complex64::from_polar(2.0 + 0.2 * j as f64, -0.5 + 0.4 * j as f64);
        match ode_residual(&params4, m, w, 1e-8, &opts) {
            Ok(e) => println!("  w={w:.2}: rel {:.3e}", e.relative),
            Err(err) => println!("  w={w:.2}: {err}"),
        }
    }
    // row defects of the attached coefficients
    let seq = m.coeffs.as_ref().unwrap();
    for n in [-30i64, -5, 0, 5, 30] {
        let d = solved.set.recurrence.row_defect(solved.report.root, n, seq.get(n - 1), seq.get(n), seq.get(n + 1));
        println!("  row {n}: defect {d:.2e}  |c_n| {:.2e}", seq.get(n).norm());
    }
}
