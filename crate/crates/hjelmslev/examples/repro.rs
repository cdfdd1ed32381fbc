use hjelmslev::tables::{reproduce, ReproOptions};
fn main() {
    let q: u8 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let opts = ReproOptions { live_exhaustive: q <= 3, extra_arc_files: vec![] };
    let t = std::time::Instant::now();
    let rep = reproduce(q, &opts).unwrap();
    print!("{}", rep.render_text());
    println!("elapsed {:?}", t.elapsed());
}
