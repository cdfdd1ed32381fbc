use hjelmslev::arcs;
use hjelmslev::constructions::{applicable_ids, claimed, construct};
use hjelmslev::plane::Plane;
use hjelmslev::ring::Ring;

fn main() {
    let mut failures = 0;
    for name in Ring::all_names() {
        let plane = Plane::new(Ring::by_name(name).unwrap());
        for id in applicable_ids(&plane.ring) {
            let t = std::time::Instant::now();
            match construct(&plane, id, 0) {
                Ok(ms) => {
                    let r = arcs::verify(&plane, &ms).unwrap();
                    println!(
                        "{name:4} {id:<18} ok  k={:<4} n_max={:<3} n_min={:<3} claim={:?} ({:?})",
                        r.k,
                        r.n_max,
                        r.n_min,
                        claimed(&plane.ring, id).unwrap(),
                        t.elapsed()
                    );
                }
                Err(e) => {
                    failures += 1;
                    println!("{name:4} {id:<18} FAIL: {e} ({:?})", t.elapsed());
                }
            }
        }
    }
    println!("failures: {failures}");
    std::process::exit(if failures > 0 { 1 } else { 0 });
}
