fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let cfg = hypmid::verify::SweepConfig { samples: n, ..Default::default() };
    let t = std::time::Instant::now();
    let r = hypmid::verify::run_sweep(hypmid::verify::Suite::All, &cfg);
    print!("{}", r.render());
    eprintln!("{:?}", t.elapsed());
}
