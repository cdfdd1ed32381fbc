use hjelmslev::arcs::{self, PointMultiset};
use hjelmslev::constructions::singer_collineation;
use hjelmslev::plane::Plane;
use hjelmslev::ring::Ring;
use hjelmslev::search::{extend_arc, orbit_problem, SearchConfig};

fn main() {
    let plane = Plane::new(Ring::by_name("Z25").unwrap());
    let g = singer_collineation(&plane).unwrap();
    let prob = orbit_problem(&plane, &[g]).unwrap();
    let n_orbits = prob.point_orbits.len();
    println!("{} orbits", n_orbits);
    // enumerate ALL 10-orbit unions that satisfy the 13-arc condition
    let mut sols: Vec<Vec<usize>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        prob: &hjelmslev::search::OrbitProblem,
        start: usize,
        chosen: &mut Vec<usize>,
        load: &mut [u64],
        sols: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == 10 {
            sols.push(chosen.clone());
            return;
        }
        let n_orbits = prob.point_orbits.len();
        for o in start..n_orbits {
            if n_orbits - o < 10 - chosen.len() {
                break;
            }
            if prob.counts.iter().enumerate().all(|(li, row)| load[li] + row[o] as u64 <= 13) {
                for (li, row) in prob.counts.iter().enumerate() {
                    load[li] += row[o] as u64;
                }
                chosen.push(o);
                rec(prob, o + 1, chosen, load, sols);
                chosen.pop();
                for (li, row) in prob.counts.iter().enumerate() {
                    load[li] -= row[o] as u64;
                }
            }
        }
    }
    let mut load = vec![0u64; prob.line_orbit_reps.len()];
    rec(&prob, 0, &mut chosen, &mut load, &mut sols);
    println!("(310,13) orbit unions: {}", sols.len());

    let t = std::time::Instant::now();
    let mut best_overall = 0u64;
    for (si, sel) in sols.iter().enumerate() {
        let mut ms = PointMultiset::empty(&plane);
        for &o in sel {
            for &p in &prob.point_orbits[o] {
                ms.mult[p as usize] = 1;
            }
        }
        let r = arcs::verify(&plane, &ms).unwrap();
        assert!(r.is_arc(310, 13));
        for seed in 0..6u64 {
            let cfg = SearchConfig::new(14, 319).with_seed(seed).with_nodes(150_000);
            let ext = extend_arc(&plane, &ms, 14, &cfg).unwrap();
            if ext.report.k > best_overall {
                best_overall = ext.report.k;
                println!(
                    "union {si} seed {seed}: k={} n_max={} ({:?})",
                    ext.report.k,
                    ext.report.n_max,
                    t.elapsed()
                );
            }
            if best_overall >= 319 {
                println!("reached 319 at union {si} seed {seed} in {:?}", t.elapsed());
                return;
            }
        }
    }
    println!("best overall: {best_overall} in {:?}", t.elapsed());
}
