use std::ffi::{CStr, CString};
use std::ptr;

use planehit_ffi::*;

const E1: &str = r#"{"points":[["0","3"],["3","0"],["0","-3"],["-3","0"]],"halfplanes":[["-1","-1","2"],["1","-1","2"],["1","1","2"],["-1","1","2"]]}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = ph_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

unsafe fn solve_with(inst: *const PhInstance, tier: PhTier) -> Vec<usize> {
    let mut sol = ptr::null_mut();
    assert_eq!(ph_solve(inst, tier, 8, &mut sol), PhErrorCode::Ok);
    assert_eq!(ph_solution_status(sol), PhStatus::Optimal);
    let mut ids = vec![usize::MAX; ph_solution_size(sol)];
    assert_eq!(
        ph_solution_indices(sol, ids.as_mut_ptr(), ids.len()),
        PhErrorCode::Ok
    );
    ph_solution_free(sol);
    ids
}

#[test]
fn json_instance_solves_on_every_tier() {
    unsafe {
        let mut inst = ptr::null_mut();
        assert_eq!(
            ph_instance_from_json(c(E1).as_ptr(), &mut inst),
            PhErrorCode::Ok
        );
        assert_eq!(
            (
                ph_instance_num_points(inst),
                ph_instance_num_halfplanes(inst)
            ),
            (4, 4)
        );
        for tier in [PhTier::Fast, PhTier::Baseline, PhTier::BruteForce] {
            let ids = solve_with(inst, tier);
            assert_eq!(ids.len(), 2, "{tier:?}");
        }
        ph_instance_free(inst);
    }
}

#[test]
fn built_instance_round_trips_through_json() {
    unsafe {
        let inst = ph_instance_new();
        assert_eq!(
            ph_instance_add_point(inst, c("1/2").as_ptr(), c("-3").as_ptr()),
            PhErrorCode::Ok
        );
        assert_eq!(
            ph_instance_add_halfplane(inst, c("0").as_ptr(), c("1").as_ptr(), c("-4").as_ptr()),
            PhErrorCode::Ok
        );
        let json = ph_instance_to_json(inst);
        assert_eq!(
            CStr::from_ptr(json).to_str().unwrap(),
            r#"{"points":[["1/2","-3"]],"halfplanes":[["0","1","-4"]]}"#
        );
        ph_string_free(json);
        assert_eq!(solve_with(inst, PhTier::Fast), vec![0]);
        ph_instance_free(inst);
    }
}

#[test]
fn infeasible_solution_is_empty() {
    unsafe {
        let inst = ph_instance_new();
        ph_instance_add_point(inst, c("0").as_ptr(), c("0").as_ptr());
        ph_instance_add_halfplane(inst, c("1").as_ptr(), c("0").as_ptr(), c("5").as_ptr());
        let mut sol = ptr::null_mut();
        assert_eq!(ph_solve(inst, PhTier::Fast, 0, &mut sol), PhErrorCode::Ok);
        assert_eq!(ph_solution_status(sol), PhStatus::Infeasible);
        assert_eq!(ph_solution_size(sol), 0);
        assert_eq!(
            ph_solution_indices(sol, ptr::null_mut(), 0),
            PhErrorCode::Ok
        );
        let json = ph_solution_to_json(sol);
        assert!(CStr::from_ptr(json)
            .to_str()
            .unwrap()
            .contains("infeasible"));
        ph_string_free(json);
        ph_solution_free(sol);
        ph_instance_free(inst);
    }
}

#[test]
fn errors_set_codes_and_messages() {
    unsafe {
        let mut inst = ptr::null_mut();
        assert_eq!(
            ph_instance_from_json(c("{").as_ptr(), &mut inst),
            PhErrorCode::Parse
        );
        assert!(inst.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(
            ph_instance_from_json(ptr::null(), &mut inst),
            PhErrorCode::NullPointer
        );

        let inst = ph_instance_new();
        assert_eq!(
            ph_instance_add_point(inst, c("x").as_ptr(), c("0").as_ptr()),
            PhErrorCode::Parse
        );
        let zero = c("0");
        assert_eq!(
            ph_instance_add_halfplane(inst, zero.as_ptr(), zero.as_ptr(), c("1").as_ptr()),
            PhErrorCode::InvalidArgument
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            ph_instance_add_point(inst, bad.as_ptr().cast(), zero.as_ptr()),
            PhErrorCode::InvalidUtf8
        );

        let mut sol = ptr::null_mut();
        assert_eq!(
            ph_solve(inst, PhTier::Fast, 0, &mut sol),
            PhErrorCode::InvalidArgument
        );
        assert_eq!(
            ph_solve(ptr::null(), PhTier::Fast, 0, &mut sol),
            PhErrorCode::NullPointer
        );
        ph_instance_free(inst);

        let mut inst = ptr::null_mut();
        ph_instance_from_json(c(E1).as_ptr(), &mut inst);
        assert_eq!(
            ph_solve(inst, PhTier::BruteForce, 1, &mut sol),
            PhErrorCode::LimitExceeded
        );
        assert_eq!(ph_solve(inst, PhTier::Fast, 0, &mut sol), PhErrorCode::Ok);
        let mut one = [0usize; 1];
        assert_eq!(
            ph_solution_indices(sol, one.as_mut_ptr(), 1),
            PhErrorCode::IndexOutOfRange
        );
        assert!(last_error().contains("need 2"));
        ph_solution_free(sol);
        ph_instance_free(inst);
    }
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        ph_instance_free(ptr::null_mut());
        ph_solution_free(ptr::null_mut());
        ph_string_free(ptr::null_mut());
        assert_eq!(ph_instance_num_points(ptr::null()), 0);
        assert_eq!(ph_solution_size(ptr::null()), 0);
        assert!(ph_instance_to_json(ptr::null()).is_null());
        assert!(ph_solution_to_json(ptr::null()).is_null());
    }
    let v = unsafe { CStr::from_ptr(ph_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
