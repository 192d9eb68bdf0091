//! Plane-wave solutions of the lattice Dirac equation and the
//! anticommutators of the ladder operators extracted from them.
//!
//! Run with `cargo run --example lattice_modes`.

use grassmann_dirac::lattice::{ladder_algebra, mode_expansion, LatticeModel};

fn main() {
    let model = LatticeModel::new(1, 8, 0.5, 1.0).unwrap();
    let basis = mode_expansion(&model).unwrap();
    println!("{:>3} {:>9} {:>9}  nullity  residual", "p", "p~", "E");
    for m in &basis.modes {
        println!(
            "{:>3} {:>9.5} {:>9.5}  {:?}  {:.1e}",
            m.momentum, m.p_tilde[0], m.energy, m.nullity, m.residual
        );
    }
    println!(
        "orthogonality {:.1e}, normalization {:.1e}, condition {:.3}",
        basis.orthogonality_residual, basis.normalization_residual, basis.condition_number
    );

    let ladder = ladder_algebra(&model, &basis).unwrap();
    println!("\n{} operators", ladder.operators);
    println!(
        "{{a,a+}} diagonal / (2E N a) - 1: {:.1e}",
        ladder.diagonal_relative_error
    );
    println!(
        "off-diagonal: {:.1e}, must-vanish: {:.1e}",
        ladder.off_diagonal_max, ladder.vanishing_max
    );
    for (p, e, d) in ladder.diagonal.iter().take(3) {
        println!("  p={p}: E={e:.4}, {{a,a+}}={d:.4}");
    }

    let massless = LatticeModel::new(1, 8, 0.5, 0.0).unwrap();
    println!("\nm=0: {}", mode_expansion(&massless).unwrap_err());
}
