//! Regenerate `data/sign_table.txt` from the matrix models.
//!
//! cargo run -p chevfq --example gen_sign_table > crates/core/data/sign_table.txt

use chevfq::chevmat::{derive_sign_table, ChevModel};
use chevfq::rootdata::RootType;

fn main() {
    println!("# Commutator expansions (e_phi(a), e_psi(b)) read off the matrix models.");
    println!("# label phi psi term sign magnitude monomial; pairs not listed commute.");
    for ty in [RootType::A(2), RootType::A(3), RootType::A(4), RootType::C2, RootType::G2] {
        let model = ChevModel::get(ty);
        for line in derive_sign_table(&model).to_lines(ty) {
            println!("{line}");
        }
    }
}
