use hjelmslev::arcs::{self, PointMultiset};
use hjelmslev::constructions::singer_collineation;
use hjelmslev::plane::Plane;
use hjelmslev::ring::Ring;
use hjelmslev::search::{extend_arc, orbit_problem, orbit_search, SearchConfig};

fn main() {
    let plane = Plane::new(Ring::by_name("Z25").unwrap());
    let g = singer_collineation(&plane).unwrap();
    println!("singer order: {}", plane.collineation_order(&g).unwrap());
    let t = std::time::Instant::now();
    let prob = orbit_problem(&plane, &[g]).unwrap();
    println!(
        "orbits: {} point ({:?} sizes), {} line",
        prob.point_orbits.len(),
        prob.point_orbits.iter().map(|o| o.len()).max(),
        prob.line_orbits.len()
    );
    let cfg = SearchConfig::new(13, 310).with_nodes(50_000_000);
    let out = orbit_search(&plane, &prob, &cfg).unwrap();
    println!(
        "orbit search: k={} n_max={} orbits={} time={:?} nodes={}",
        out.report.k,
        out.report.n_max,
        out.report.k / 31,
        t.elapsed(),
        out.nodes
    );
    let t = std::time::Instant::now();
    let mut best: Option<PointMultiset> = None;
    for seed in 0..40u64 {
        let cfg = SearchConfig::new(14, 319).with_seed(seed).with_nodes(400_000);
        let ext = extend_arc(&plane, &out.best, 14, &cfg).unwrap();
        let k = ext.report.k;
        if best.as_ref().map_or(true, |b| b.cardinality() < k) {
            best = Some(ext.best);
        }
        let bk = best.as_ref().unwrap().cardinality();
        println!("seed {seed}: k={k} (best {bk}) {:?}", t.elapsed());
        if bk >= 319 {
            break;
        }
    }
    let b = best.unwrap();
    let r = arcs::verify(&plane, &b).unwrap();
    println!("extend: k={} n_max={} in {:?}", r.k, r.n_max, t.elapsed());
}
