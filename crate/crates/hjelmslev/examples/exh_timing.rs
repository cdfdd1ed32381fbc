use hjelmslev::plane::Plane;
use hjelmslev::ring::Ring;
use hjelmslev::search::{exhaustive_search, SearchConfig};
fn main() {
    for name in ["Z9", "S3"] {
        let pl = Plane::new(Ring::by_name(name).unwrap());
        let t = std::time::Instant::now();
        let cfg = SearchConfig::new(0, 0).with_nodes(2_000_000_000);
        let r = exhaustive_search(&pl, 2, &cfg);
        println!("{name}: m_2 = {} complete={} nodes={} in {:?}", r.max_k, r.complete, r.nodes, t.elapsed());
    }
}
