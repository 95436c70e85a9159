//! Counting many-particle states three ways: labeled assignments, occupancy
//! vectors, and orbits of labeled assignments under particle permutations.
//!
//!     cargo run --example fock_statistics

use qlab::fock::{classical_quotient_oracle, count_states, statistics_table, Counting};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>2} {:>2} {:>6} {:>5} {:>4}", "n", "k", "MB", "BE", "FD");
    for row in statistics_table(4, 4) {
        let fd = row.fd.map_or("-".to_string(), |v| v.to_string());
        println!("{:>2} {:>2} {:>6} {:>5} {:>4}", row.n, row.k, row.mb, row.be, fd);
    }

    // two quanta in two modes
    for stat in Counting::ALL {
        let c = count_states(2, 2, stat)?;
        let orbits = classical_quotient_oracle(2, 2, stat)?;
        println!("{}: closed form {}, quotient of labeled states {orbits}", stat.abbrev(), c.closed_form);
    }
    Ok(())
}
