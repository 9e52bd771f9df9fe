//! C interface to `zassenhaus`.
//!
//! Every function returns a [`ZsStatus`]. Results come back through out
//! pointers: opaque handles (released with the matching `*_free`) or
//! NUL-terminated decimal strings (released with [`zs_string_free`]). After
//! a failure, [`zs_last_error`] describes it; the message is per thread and
//! stays valid until the next failing call on that thread.
//!
//! # Safety
//!
//! Pointers passed in must be null or valid for the access described by each
//! function; handles must come from this library and not be used after
//! being freed.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use zassenhaus::dims::DimensionTable;
use zassenhaus::ext::{self, LocalFieldParams};
use zassenhaus::hp::{self, GroupFamily};
use zassenhaus::pgroup::{self, FiniteGroup, GroupSpec};
use zassenhaus::{local, verify, Error, TruncatedSeries};

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZsStatus {
    Ok = 0,
    /// A required pointer was null.
    NullPointer = 1,
    /// Arguments outside the documented domain.
    Contract = 2,
    NotInvertible = 3,
    /// A computed quantity violated an expected integrality or sign.
    Data = 4,
    /// The request exceeds a size limit.
    Resource = 5,
    Unsupported = 6,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 7,
    /// An internal panic was caught at the boundary.
    Panic = 8,
}

/// Group families accepted by [`zs_series_new`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZsFamily {
    /// Free pro-p of rank `param`.
    Free = 0,
    /// Demushkin of rank `param`.
    Demushkin = 1,
    /// Free product of `param` copies of `C_p`.
    FreeProductCyclic = 2,
    /// `Z_2^param ⋊ C_2`.
    Superpythagorean = 3,
    /// Free product of `C_p` and a free pro-p group of rank `param`.
    CyclicFree = 4,
}

/// Which row of a dimension table to read.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZsDimsKind {
    /// Log coefficients `b_n` (rationals, printed as `a/b`).
    B = 0,
    /// `w_n`.
    W = 1,
    /// `c_n`.
    C = 2,
}

/// A truncated Hilbert-Poincaré series.
pub struct ZsSeries {
    inner: TruncatedSeries,
}

/// The `b`, `w`, `c` tables of a series.
pub struct ZsDims {
    inner: DimensionTable,
}

/// A finite group given by its multiplication table.
pub struct ZsGroup {
    inner: FiniteGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(ZsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Contract(_) => ZsStatus::Contract,
            Error::NotInvertible => ZsStatus::NotInvertible,
            Error::Data(_) => ZsStatus::Data,
            Error::Resource(_) => ZsStatus::Resource,
            Error::Unsupported(_) => ZsStatus::Unsupported,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ZsStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ZsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            ZsStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(ZsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: impl ToString) -> Result<(), Failure> {
    let c = CString::new(s.to_string()).map_err(|_| Failure(ZsStatus::Data, "string contains NUL".into()))?;
    write_out(out, c.into_raw())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(ZsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn to_u32(v: u64, what: &str) -> Result<u32, Failure> {
    u32::try_from(v).map_err(|_| Failure(ZsStatus::Contract, format!("{what} = {v} is too large")))
}

/// Message for the most recent failure on this thread, or null. Owned by the
/// library; do not free.
#[no_mangle]
pub extern "C" fn zs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn zs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Series of a family to order `order`.
#[no_mangle]
pub unsafe extern "C" fn zs_series_new(
    family: ZsFamily,
    p: u64,
    param: u32,
    order: usize,
    out: *mut *mut ZsSeries,
) -> ZsStatus {
    guard(|| {
        let family = match family {
            ZsFamily::Free => GroupFamily::free(param),
            ZsFamily::Demushkin => GroupFamily::demushkin(param),
            ZsFamily::FreeProductCyclic => GroupFamily::FreeProdCyclicP { p, copies: param },
            ZsFamily::Superpythagorean => GroupFamily::SuperPyth { d: param },
            ZsFamily::CyclicFree => GroupFamily::CyclicPFree { p, free_rank: param },
        };
        let inner = hp::family_series(&family, p, order)?;
        write_out(out, Box::into_raw(Box::new(ZsSeries { inner })))
    })
}

/// Series of a free product of Demushkin groups of the given ranks and a
/// free group of rank `free_rank`.
#[no_mangle]
pub unsafe extern "C" fn zs_series_new_mixed(
    p: u64,
    demushkin_ranks: *const u32,
    count: usize,
    free_rank: u32,
    order: usize,
    out: *mut *mut ZsSeries,
) -> ZsStatus {
    guard(|| {
        let ranks = if count == 0 {
            Vec::new()
        } else if demushkin_ranks.is_null() {
            return Err(null("demushkin_ranks"));
        } else {
            std::slice::from_raw_parts(demushkin_ranks, count).to_vec()
        };
        let family = GroupFamily::MixedFreeProd { demushkin_ranks: ranks, free_rank };
        let inner = hp::family_series(&family, p, order)?;
        write_out(out, Box::into_raw(Box::new(ZsSeries { inner })))
    })
}

#[no_mangle]
pub unsafe extern "C" fn zs_series_order(series: *const ZsSeries, out: *mut usize) -> ZsStatus {
    guard(|| write_out(out, borrow(series, "series")?.inner.order()))
}

/// Coefficient of `t^n` as a decimal string (`a/b` if not an integer).
#[no_mangle]
pub unsafe extern "C" fn zs_series_coeff(
    series: *const ZsSeries,
    n: usize,
    out: *mut *mut c_char,
) -> ZsStatus {
    guard(|| {
        let s = &borrow(series, "series")?.inner;
        if n > s.order() {
            return Err(Failure(ZsStatus::Contract, format!("n = {n} exceeds the order {}", s.order())));
        }
        write_string(out, s.coeff(n))
    })
}

#[no_mangle]
pub unsafe extern "C" fn zs_series_free(series: *mut ZsSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Dimension tables for `n = 1..=order`.
#[no_mangle]
pub unsafe extern "C" fn zs_dims_new(
    series: *const ZsSeries,
    p: u64,
    order: usize,
    out: *mut *mut ZsDims,
) -> ZsStatus {
    guard(|| {
        let inner = DimensionTable::from_series(&borrow(series, "series")?.inner, p, order)?;
        write_out(out, Box::into_raw(Box::new(ZsDims { inner })))
    })
}

/// Entry `n` (1-based) of the chosen table as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn zs_dims_get(
    dims: *const ZsDims,
    kind: ZsDimsKind,
    n: usize,
    out: *mut *mut c_char,
) -> ZsStatus {
    guard(|| {
        let t = &borrow(dims, "dims")?.inner;
        if n == 0 || n > t.order {
            return Err(Failure(ZsStatus::Contract, format!("n = {n} is outside 1..={}", t.order)));
        }
        match kind {
            ZsDimsKind::B => write_string(out, &t.b[n - 1]),
            ZsDimsKind::W => write_string(out, &t.w[n - 1]),
            ZsDimsKind::C => write_string(out, &t.c[n - 1]),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn zs_dims_free(dims: *mut ZsDims) {
    if !dims.is_null() {
        drop(Box::from_raw(dims));
    }
}

/// Builds a group from a description such as `d4`, `cyclic:8`,
/// `abelian:2,2`, `dihedral:8`, `unipotent:3:3` or `semidirect:2:1`.
#[no_mangle]
pub unsafe extern "C" fn zs_group_new(spec: *const c_char, out: *mut *mut ZsGroup) -> ZsStatus {
    guard(|| {
        let spec: GroupSpec = read_str(spec, "spec")?.parse()?;
        let inner = spec.build()?;
        write_out(out, Box::into_raw(Box::new(ZsGroup { inner })))
    })
}

#[no_mangle]
pub unsafe extern "C" fn zs_group_order(group: *const ZsGroup, out: *mut usize) -> ZsStatus {
    guard(|| write_out(out, borrow(group, "group")?.inner.order()))
}

/// `|Aut(G)|` as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn zs_group_automorphisms(group: *const ZsGroup, out: *mut *mut c_char) -> ZsStatus {
    guard(|| write_string(out, pgroup::automorphism_count(&borrow(group, "group")?.inner)?))
}

/// Writes `c_1..c_len` of the Zassenhaus filtration at `p` into `dims`.
#[no_mangle]
pub unsafe extern "C" fn zs_group_zassenhaus_dims(
    group: *const ZsGroup,
    p: u64,
    dims: *mut u32,
    len: usize,
) -> ZsStatus {
    guard(|| {
        let g = &borrow(group, "group")?.inner;
        if len == 0 {
            return Ok(());
        }
        if dims.is_null() {
            return Err(null("dims"));
        }
        let chain = pgroup::zassenhaus_chain(g, p, len)?;
        std::slice::from_raw_parts_mut(dims, len).copy_from_slice(&chain.dims[..len]);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn zs_group_free(group: *mut ZsGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// `ν(K, G)` for a degree-`n` extension `K / Q_p`; `q = 0` means `K` has no
/// `p`-th roots of unity. The relation case is chosen from `(n, q)` with `f = 2`.
#[no_mangle]
pub unsafe extern "C" fn zs_count_extensions(
    p: u64,
    n: u32,
    q: u64,
    group: *const ZsGroup,
    out: *mut *mut c_char,
) -> ZsStatus {
    guard(|| {
        let g = &borrow(group, "group")?.inner;
        let params = LocalFieldParams::new(p, n, (q != 0).then_some(q))?;
        write_string(out, ext::nu_yamagishi(&params, g)?)
    })
}

/// `ν(K, U_3(F_p))` from the closed form.
#[no_mangle]
pub unsafe extern "C" fn zs_count_u3(p: u64, n: u32, q: u64, out: *mut *mut c_char) -> ZsStatus {
    guard(|| write_string(out, ext::nu_u3(p, n, q)?))
}

/// `D_4`-extensions of a SAP field with `n` orderings.
#[no_mangle]
pub unsafe extern "C" fn zs_count_sap(n: u64, out: *mut *mut c_char) -> ZsStatus {
    guard(|| write_string(out, ext::sap_d4_count(to_u32(n, "n")?)?))
}

/// `D_4`-extensions of `Q_p`.
#[no_mangle]
pub unsafe extern "C" fn zs_count_d4_local(p: u64, out: *mut u64) -> ZsStatus {
    guard(|| write_out(out, local::d4_extension_count_qp(p)?))
}

/// Runs built-in check `id`; `passed` receives the outcome and `detail`, if
/// non-null, a description.
#[no_mangle]
pub unsafe extern "C" fn zs_verify(id: u32, passed: *mut bool, detail: *mut *mut c_char) -> ZsStatus {
    guard(|| {
        let report = verify::run_check(id)
            .ok_or_else(|| Failure(ZsStatus::Contract, format!("no check numbered {id}")))?;
        write_out(passed, report.passed)?;
        if !detail.is_null() {
            write_string(detail, &report)?;
        }
        Ok(())
    })
}
