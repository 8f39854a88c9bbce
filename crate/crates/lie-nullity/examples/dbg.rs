use nalgebra::{DMatrix, DVector};
use lie_nullity::splitting::{trace_limits, SplittingState};
fn main() {
    let c0 = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, -1.0, -1.0]));
    let r = trace_limits(&c0).unwrap();
    println!("4x4 residual = {:.3e}, sigma = {:?}", r.trace_identity_residual, r.sigma);
    // where is it largest?
    let state = SplittingState::new(-1.0, c0.clone()).unwrap();
    for i in 0..11 {
        let t = -5.0 + i as f64;
        let tr = state.splitting_at(t).unwrap().trace();
        println!("t = {t:5.1}  trC = {tr:+.15e}");
    }
}
