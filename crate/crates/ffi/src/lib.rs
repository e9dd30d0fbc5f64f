//! C ABI over the core library. Every result crosses the boundary as a
//! JSON string allocated by Rust; the caller frees it with
//! `td_string_free`. Handles are opaque; status codes signal errors.

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tightdesigns::rat::parse_decimal;
use tightdesigns::{beta0, design, hermite, s4, search, smith};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum TdStatus {
    TdOk = 0,
    TdNullArgument = 1,
    TdBadParameters = 2,
    TdBudgetExhausted = 3,
    TdInternalError = 4,
}

fn status_of(e: &tightdesigns::Error) -> TdStatus {
    match e {
        tightdesigns::Error::BadParameters(_) => TdStatus::TdBadParameters,
        tightdesigns::Error::SupremumBudget(_) => TdStatus::TdBudgetExhausted,
        _ => TdStatus::TdInternalError,
    }
}

/// Serialize `body` into `out` as a heap-allocated C string.
fn put_json<T: serde::Serialize>(body: &T, out: *mut *mut c_char) -> TdStatus {
    let text = match serde_json::to_string_pretty(body) {
        Ok(t) => t,
        Err(_) => return TdStatus::TdInternalError,
    };
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            TdStatus::TdOk
        }
        Err(_) => TdStatus::TdInternalError,
    }
}

fn guarded(f: impl FnOnce() -> TdStatus) -> TdStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(TdStatus::TdInternalError)
}

/// Opaque handle holding the certified zero enclosures for one s.
pub struct TdHermiteTable {
    inner: hermite::HermiteTable,
}

/// Build the Hermite zero table for strength-half `s`; on success writes the
/// new handle into `out`. Free with [`td_table_free`].
///
/// # Safety
/// `out` must be a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn td_table_new(s: u32, out: *mut *mut TdHermiteTable) -> TdStatus {
    if out.is_null() {
        return TdStatus::TdNullArgument;
    }
    guarded(|| match hermite::build_table(s, &hermite::default_width()) {
        Ok(inner) => {
            unsafe { *out = Box::into_raw(Box::new(TdHermiteTable { inner })) };
            TdStatus::TdOk
        }
        Err(e) => status_of(&e),
    })
}

/// # Safety
/// `table` must come from [`td_table_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn td_table_free(table: *mut TdHermiteTable) {
    if !table.is_null() {
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Free a string returned by any `*_json` entry point.
///
/// # Safety
/// `s` must be a pointer previously written by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn td_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Reproduce the published polynomial and zero tables; JSON report in `out`.
///
/// # Safety
/// `out` must be a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn td_tables_json(out: *mut *mut c_char) -> TdStatus {
    if out.is_null() {
        return TdStatus::TdNullArgument;
    }
    guarded(|| match hermite::reproduce_tables(&hermite::default_width()) {
        Ok(rep) => put_json(&rep, out),
        Err(e) => status_of(&e),
    })
}

/// Feasibility-check the candidate (s, v, k); verdict JSON in `out`.
/// `survivor` is set to 1 when every test passes.
///
/// # Safety
/// `out` and `survivor` must be valid, writable pointers.
#[no_mangle]
pub unsafe extern "C" fn td_check_candidate_json(
    s: u32,
    v: u64,
    k: u64,
    survivor: *mut i32,
    out: *mut *mut c_char,
) -> TdStatus {
    if out.is_null() || survivor.is_null() {
        return TdStatus::TdNullArgument;
    }
    guarded(|| match design::check_candidate(s, v, k) {
        Ok(verdict) => {
            unsafe { *survivor = verdict.passed as i32 };
            put_json(&verdict, out)
        }
        Err(e) => status_of(&e),
    })
}

/// Exclusion threshold report for `s`, computed from the published
/// constants; JSON in `out`.
///
/// # Safety
/// `table` must come from [`td_table_new`] with the same `s`; `out` must be
/// a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn td_beta0_json(
    s: u32,
    table: *const TdHermiteTable,
    out: *mut *mut c_char,
) -> TdStatus {
    if out.is_null() || table.is_null() {
        return TdStatus::TdNullArgument;
    }
    let table = unsafe { &(*table).inner };
    guarded(|| {
        let run = || -> tightdesigns::Result<beta0::Beta0Report> {
            let consts = beta0::paper_constants(s, table)?;
            beta0::beta0(s, &consts, table)
        };
        match run() {
            Ok(rep) => put_json(&rep, out),
            Err(e) => status_of(&e),
        }
    })
}

/// Validate the published constants row for `s` against certified suprema.
/// `all_ok` is set to 1 when every bound holds.
///
/// # Safety
/// `table` must come from [`td_table_new`] with the same `s`; `all_ok` and
/// `out` must be valid, writable pointers.
#[no_mangle]
pub unsafe extern "C" fn td_validate_constants_json(
    s: u32,
    table: *const TdHermiteTable,
    all_ok: *mut i32,
    out: *mut *mut c_char,
) -> TdStatus {
    if out.is_null() || table.is_null() || all_ok.is_null() {
        return TdStatus::TdNullArgument;
    }
    let table = unsafe { &(*table).inner };
    guarded(|| {
        let run = || -> tightdesigns::Result<smith::PaperValidation> {
            let pipe = smith::build_pipeline(s)?;
            smith::validate_paper_constants(&pipe, table)
        };
        match run() {
            Ok(rep) => {
                unsafe { *all_ok = rep.all_ok as i32 };
                put_json(&rep, out)
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Run the exhaustive alpha scan for `s` with threshold `beta0` (a decimal
/// string, e.g. "33.76"). `survivors` receives the survivor count.
///
/// # Safety
/// `beta0` must be a valid NUL-terminated string; `survivors` and `out`
/// must be valid, writable pointers.
#[no_mangle]
pub unsafe extern "C" fn td_search_json(
    s: u32,
    beta0: *const c_char,
    survivors: *mut u64,
    out: *mut *mut c_char,
) -> TdStatus {
    if out.is_null() || beta0.is_null() || survivors.is_null() {
        return TdStatus::TdNullArgument;
    }
    let text = match unsafe { std::ffi::CStr::from_ptr(beta0) }.to_str() {
        Ok(t) => t,
        Err(_) => return TdStatus::TdBadParameters,
    };
    guarded(|| {
        let config = search::SearchConfig::new(s, parse_decimal(text));
        match search::run_search(&config) {
            Ok(rep) => {
                unsafe { *survivors = rep.survivors.len() as u64 };
                put_json(&rep, out)
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Scan `k` in `[k_lo, k_hi]` for integer roots of the strength-8 surface
/// polynomial; hit list JSON in `out`, count in `hits`.
///
/// # Safety
/// `hits` and `out` must be valid, writable pointers.
#[no_mangle]
pub unsafe extern "C" fn td_s4_scan_json(
    k_lo: u64,
    k_hi: u64,
    hits: *mut u64,
    out: *mut *mut c_char,
) -> TdStatus {
    if out.is_null() || hits.is_null() {
        return TdStatus::TdNullArgument;
    }
    guarded(|| match s4::scan_k_range(k_lo, k_hi) {
        Ok(list) => {
            unsafe { *hits = list.len() as u64 };
            put_json(&list, out)
        }
        Err(e) => status_of(&e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn take(p: *mut c_char) -> String {
        let s = unsafe { std::ffi::CStr::from_ptr(p) }.to_str().unwrap().to_string();
        unsafe { td_string_free(p) };
        s
    }

    #[test]
    fn candidate_round_trip() {
        let mut survivor = -1;
        let mut out = ptr::null_mut();
        let st = unsafe { td_check_candidate_json(2, 23, 7, &mut survivor, &mut out) };
        assert!(st == TdStatus::TdOk);
        assert_eq!(survivor, 1);
        let body: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(body["intersection_numbers"], serde_json::json!([1, 3]));
    }

    #[test]
    fn null_arguments_rejected() {
        let st = unsafe { td_tables_json(ptr::null_mut()) };
        assert!(st == TdStatus::TdNullArgument);
        let mut survivor = 0;
        let st = unsafe { td_check_candidate_json(2, 23, 7, &mut survivor, ptr::null_mut()) };
        assert!(st == TdStatus::TdNullArgument);
    }

    #[test]
    fn bad_parameters_reported() {
        let mut survivor = 0;
        let mut out = ptr::null_mut();
        // k < 2s is outside the parameter domain
        let st = unsafe { td_check_candidate_json(5, 30, 4, &mut survivor, &mut out) };
        assert!(st == TdStatus::TdBadParameters);
    }

    #[test]
    fn table_handle_lifecycle() {
        let mut table = ptr::null_mut();
        let st = unsafe { td_table_new(4, &mut table) };
        assert!(st == TdStatus::TdOk);
        let mut out = ptr::null_mut();
        let st = unsafe { td_beta0_json(4, table, &mut out) };
        assert!(st == TdStatus::TdOk);
        let body: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(body["beta0"], "19.35");
        unsafe { td_table_free(table) };
    }
}
