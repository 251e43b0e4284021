mod common;

use common::fock::FreeField;
use voa_core::constructions::{bc_system, beta_gamma, heisenberg, symplectic_fermion};

fn compare(ff: FreeField, p: std::sync::Arc<voa_core::va::VAPresentation>, w: i64) {
    let (n, bad) = common::fock_equivalence(&ff, &p, w);
    assert!(bad.is_empty(), "{}: mismatches {bad:?}", ff.name);
    assert!(n > 0);
}

#[test]
fn heisenberg_products_match_fock_modes() {
    compare(FreeField::heisenberg(), heisenberg(1).unwrap(), 4);
}

#[test]
fn bc_products_match_fock_modes() {
    compare(FreeField::bc(), bc_system(1).unwrap(), 4);
}

#[test]
fn betagamma_products_match_fock_modes() {
    compare(FreeField::betagamma(), beta_gamma(1).unwrap(), 4);
}

#[test]
fn symplectic_products_match_fock_modes() {
    compare(FreeField::symplectic(), symplectic_fermion(1).unwrap(), 4);
}

#[test]
fn oracle_distinguishes_conventions() {
    let (_, bad) = common::fock_equivalence(&FreeField::bc().with_flipped_pairing(), &bc_system(1).unwrap(), 2);
    assert!(!bad.is_empty());
    let (_, bad) = common::fock_equivalence(&FreeField::heisenberg().with_flipped_pairing(), &heisenberg(1).unwrap(), 2);
    assert!(!bad.is_empty());
}
