fn main() {
    let t = std::time::Instant::now();
    let row = hjelmslev::bounds::ell_oracle_row(5);
    println!("{:?} in {:?}", row, t.elapsed());
}
