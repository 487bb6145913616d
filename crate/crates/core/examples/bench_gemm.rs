use chainsq_core::fock::CMat;
use num_complex::Complex64 as C64;
use std::time::Instant;

fn main() {
    let n = 200;
    let a = CMat::from_shape_fn((n, n), |(i, j)| C64::new((i + j) as f64 * 1e-4, (i * j % 7) as f64 * 1e-3));
    let b = a.clone();
    let t0 = Instant::now();
    let mut acc = C64::new(0.0, 0.0);
    let reps = 100;
    for _ in 0..reps {
        let c = a.dot(&b);
        acc += c[[0, 0]];
    }
    let dt = t0.elapsed().as_secs_f64();
    let flops = reps as f64 * 8.0 * (n as f64).powi(3);
    println!("complex {}x{}: {:.2} GFLOPS ({acc})", n, n, flops / dt / 1e9);

    let ar = ndarray::Array2::<f64>::from_shape_fn((n, n), |(i, j)| (i + j) as f64 * 1e-4);
    let t0 = Instant::now();
    let mut s = 0.0;
    for _ in 0..reps {
        let c = ar.dot(&ar);
        s += c[[0, 0]];
    }
    let dt = t0.elapsed().as_secs_f64();
    let flops = reps as f64 * 2.0 * (n as f64).powi(3);
    println!("real {}x{}: {:.2} GFLOPS ({s})", n, n, flops / dt / 1e9);
}
