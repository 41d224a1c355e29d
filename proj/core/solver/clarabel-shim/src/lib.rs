// C ABI over the Clarabel interior-point solver for conic problems in
// standard form: min c'x  s.t.  Ax + s = b,  s in Zero x Nonneg x PSD-svec.
use clarabel::algebra::*;
use clarabel::solver::*;

/// status: 0 solved, 1 almost solved, 2 primal infeasible, 3 dual infeasible,
/// 4 iteration/time limit, 5 numerical trouble / unsolved
#[no_mangle]
pub unsafe extern "C" fn pncert_clarabel_solve(
    n: i64,
    m: i64,
    colptr: *const i64,
    rowidx: *const i32,
    vals: *const f64,
    b: *const f64,
    c: *const f64,
    n_zero: i64,
    n_nonneg: i64,
    n_psd: i64,
    psd_sides: *const i32,
    eps: f64,
    max_iters: i64,
    time_limit: f64,
    verbose: i32,
    out_x: *mut f64,
    out_y: *mut f64,
    out_obj: *mut f64,
    out_iters: *mut i64,
) -> i32 {
    let n = n as usize;
    let m = m as usize;
    let colptr = std::slice::from_raw_parts(colptr, n + 1);
    let nnz = colptr[n] as usize;
    let rowidx = std::slice::from_raw_parts(rowidx, nnz);
    let vals = std::slice::from_raw_parts(vals, nnz);
    let b = std::slice::from_raw_parts(b, m).to_vec();
    let c = std::slice::from_raw_parts(c, n).to_vec();

    let a = CscMatrix::new(
        m,
        n,
        colptr.iter().map(|&v| v as usize).collect(),
        rowidx.iter().map(|&v| v as usize).collect(),
        vals.to_vec(),
    );
    let p = CscMatrix::<f64>::zeros((n, n));

    let mut cones: Vec<SupportedConeT<f64>> = Vec::new();
    if n_zero > 0 {
        cones.push(ZeroConeT(n_zero as usize));
    }
    if n_nonneg > 0 {
        cones.push(NonnegativeConeT(n_nonneg as usize));
    }
    let sides = std::slice::from_raw_parts(psd_sides, n_psd as usize);
    for &d in sides {
        cones.push(PSDTriangleConeT(d as usize));
    }

    let settings = DefaultSettingsBuilder::default()
        .verbose(verbose != 0)
        .max_iter(max_iters.max(1) as u32)
        .time_limit(if time_limit > 0.0 { time_limit } else { f64::INFINITY })
        .tol_gap_abs(eps)
        .tol_gap_rel(eps)
        .tol_feas(eps)
        .build()
        .unwrap();

    let mut solver = match DefaultSolver::new(&p, &c, &a, &b, &cones, settings) {
        Ok(s) => s,
        Err(_) => return 5,
    };
    solver.solve();

    let sol = &solver.solution;
    std::ptr::copy_nonoverlapping(sol.x.as_ptr(), out_x, n.min(sol.x.len()));
    std::ptr::copy_nonoverlapping(sol.z.as_ptr(), out_y, m.min(sol.z.len()));
    *out_obj = sol.obj_val;
    *out_iters = sol.iterations as i64;

    match sol.status {
        SolverStatus::Solved => 0,
        SolverStatus::AlmostSolved => 1,
        SolverStatus::PrimalInfeasible | SolverStatus::AlmostPrimalInfeasible => 2,
        SolverStatus::DualInfeasible | SolverStatus::AlmostDualInfeasible => 3,
        SolverStatus::MaxIterations | SolverStatus::MaxTime => 4,
        _ => 5,
    }
}
