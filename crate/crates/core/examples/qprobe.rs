fn main() {
    for s in [2usize, 3] {
        for tol in [1e-6f64, 1e-8] {
            let t = std::time::Instant::now();
            let q = weylab::quad_build(s, tol).unwrap();
            let built = t.elapsed();
            let t2 = std::time::Instant::now();
            let v = q.integrate_real(1.0, |p| (-p.iter().map(|x| x * x).sum::<f64>()).exp());
            let one = t2.elapsed();
            println!("s={s} tol={tol:.0e}: nodes={} build={built:?} one_integral={one:?} val={v:.12}", q.len());
        }
    }
}
