//! CSV re-parse of a pipeline result compared with the in-memory values.

use diracdot::io::tables::*;
use diracdot::io::PipelineResult;
use num_complex::Complex64;

pub const REL: f64 = 1e-12;

fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= REL * a.abs().max(b.abs())
}

fn check(what: &str, a: f64, b: f64) -> Result<(), String> {
    if close(a, b) {
        Ok(())
    } else {
        Err(format!("{what}: {a} re-parsed as {b}"))
    }
}

fn check_c(what: &str, a: Complex64, b: Complex64) -> Result<(), String> {
    check(what, a.re, b.re)?;
    check(what, a.im, b.im)
}

fn check_all(what: &str, a: &[f64], b: &[f64]) -> Result<(), String> {
    if a.len() != b.len() {
        return Err(format!("{what}: {} values re-parsed as {}", a.len(), b.len()));
    }
    a.iter().zip(b).try_for_each(|(x, y)| check(what, *x, *y))
}

fn same_len(what: &str, a: usize, b: usize) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: {a} rows re-parsed as {b}"))
    }
}

/// Number of values compared, or the first mismatch.
pub fn csv_round_trip(result: &PipelineResult) -> Result<usize, String> {
    let text = result.to_csv().map_err(|e| e.to_string())?;
    let err = |e: diracdot::io::IoError| e.to_string();
    let mut n = 0;
    match result {
        PipelineResult::Spectrum(s) => {
            let back = read_spectrum_csv(&text, s.mu, s.ell).map_err(err)?;
            same_len("branches", s.branches.len(), back.branches.len())?;
            for (a, b) in s.branches.iter().zip(&back.branches) {
                check_all("v_grid", &a.v_grid, &b.v_grid)?;
                check_all("eps", &a.eps, &b.eps)?;
                n += 2 * a.eps.len();
            }
            check_all("critical", &s.critical_depths, &back.critical_depths)?;
            check_all("supercritical", &s.supercritical_depths, &back.supercritical_depths)?;
            n += s.critical_depths.len() + s.supercritical_depths.len();
        }
        PipelineResult::Capture(d) => {
            let back = read_capture_csv(&text).map_err(err)?;
            same_len("capture", d.len(), back.len())?;
            for (a, b) in d.iter().zip(&back) {
                if a.kind != b.kind {
                    return Err(format!("kind {:?} re-parsed as {:?}", a.kind, b.kind));
                }
                check("v", a.v, b.v)?;
                check("p_inner", a.p_inner, b.p_inner)?;
                check("residual", a.residual, b.residual)?;
                n += 3;
            }
        }
        PipelineResult::Resonances(t) => {
            let back = read_trajectories_csv(&text).map_err(err)?;
            same_len("trajectories", t.len(), back.len())?;
            for (tr, pts) in t.iter().zip(&back) {
                let orig = tr.resonance_points();
                same_len("points", orig.len(), pts.len())?;
                for (a, b) in orig.iter().zip(pts) {
                    if a.classification != b.classification {
                        return Err(format!("classification {} re-parsed as {}", a.classification, b.classification));
                    }
                    check("v", a.v, b.v)?;
                    check_c("eps", a.eps, b.eps)?;
                    check("residual", a.residual, b.residual)?;
                    n += 4;
                }
            }
        }
        PipelineResult::Delay(c) => {
            let back = read_delay_csv(&text).map_err(err)?;
            check_all("eps", &c.energies, &back.energies)?;
            check_all("raw_phase", &c.raw_phase, &back.raw_phase)?;
            check_all("unwrapped_phase", &c.unwrapped_phase, &back.unwrapped_phase)?;
            check_all("delay", &c.delay, &back.delay)?;
            n += 4 * c.len();
        }
        PipelineResult::Consistency { report, .. } => {
            let back = read_consistency_csv(&text, report.mu, report.ell, report.v).map_err(err)?;
            same_len("rows", report.rows.len(), back.rows.len())?;
            for (a, b) in report.rows.iter().zip(&back.rows) {
                check("eps_R", a.eps_r, b.eps_r)?;
                check("eps_I", a.eps_i, b.eps_i)?;
                check("delay_peak_eps", a.delay_peak_eps, b.delay_peak_eps)?;
                check("delay_peak_value", a.delay_peak_value, b.delay_peak_value)?;
                check("gap", a.gap, b.gap)?;
                n += 5;
            }
        }
        PipelineResult::Spinor(s) => {
            let back = read_spinor_csv(&text).map_err(err)?;
            same_len("samples", s.len(), back.len())?;
            for (a, (rho, region, p1, p2)) in s.iter().zip(&back) {
                if a.region != *region {
                    return Err(format!("region {:?} re-parsed as {region:?}", a.region));
                }
                check("rho", a.rho, *rho)?;
                check_c("phi1", a.phi1, *p1)?;
                check_c("phi2", a.phi2, *p2)?;
                n += 5;
            }
        }
        PipelineResult::Convert { natural, physical } => {
            let (nb, pb) = read_convert_csv(&text).map_err(err)?;
            check("eps", natural.eps, nb.eps)?;
            check("v", natural.v, nb.v)?;
            check("mu", natural.mu, nb.mu)?;
            check("energy", physical.energy, pb.energy)?;
            check("well_depth", physical.well_depth, pb.well_depth)?;
            check("mass", physical.mass, pb.mass)?;
            n += 6;
        }
    }
    Ok(n)
}
