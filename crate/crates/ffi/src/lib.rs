//! C ABI over the `njc` library.
//!
//! Every function returns an [`NjcStatus`]; results are written through out
//! pointers. On failure the message is kept per thread and can be read with
//! [`njc_last_error_message`]. Field states are opaque [`NjcState`] handles
//! owned by the caller and released with [`njc_state_free`]. Times passed in
//! are physical times `t` (not `λt`).

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use njc::grid::TimeGrid;
use njc::model::{critical_detuning_single, critical_detuning_two, SingleModeParams, TwoModeParams};
use njc::single::{evolve_single, mean_linear_entropy, single_timeseries, SingleRecord};
use njc::states::{FockVector, PairedFockVector, StateFamily, DEFAULT_TAIL_TOL};
use njc::two::{evolve_two, mean_measures, two_timeseries, EntanglementRecord};
use njc::{Complex64, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NjcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    /// Critical detuning requested with `k = 0`.
    ZeroDeformation = 3,
    /// The requested cutoff leaves too much probability in the tail.
    Truncation = 4,
    Numerical = 5,
    /// A single-mode state was passed where a paired one is needed, or vice versa.
    WrongModel = 6,
    BufferTooSmall = 7,
    Panic = 8,
    Other = 9,
}

/// Single-mode parameters. `omega` is the field frequency.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct NjcSingleParams {
    pub omega: f64,
    pub lambda: f64,
    pub k: f64,
    pub delta: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct NjcTwoParams {
    pub omega1: f64,
    pub omega2: f64,
    pub lambda: f64,
    pub k: f64,
    pub delta: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NjcSingleRecord {
    pub time: f64,
    pub inversion: f64,
    pub linear_entropy: f64,
    pub coherence: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NjcTwoRecord {
    pub time: f64,
    pub inversion: f64,
    pub tangle_a_ff: f64,
    pub tangle_af1_f2: f64,
    pub tangle_af2_f1: f64,
    pub relative_entropy: f64,
    pub coherence: f64,
}

/// Opaque field state: single-mode Fock amplitudes or paired amplitudes.
pub struct NjcState(StateKind);

enum StateKind {
    Single(FockVector),
    Paired(PairedFockVector),
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> NjcStatus {
    match e {
        Error::InvalidParameter(_) | Error::Config(_) | Error::DimensionMismatch(..) => NjcStatus::InvalidParameter,
        Error::ZeroDeformation => NjcStatus::ZeroDeformation,
        Error::Truncation { .. } => NjcStatus::Truncation,
        Error::NotHermitian(_) | Error::NoConvergence(_) | Error::InvalidDensity(_) => NjcStatus::Numerical,
        Error::WrongRepresentation(_) => NjcStatus::WrongModel,
        Error::Io(_) => NjcStatus::Other,
    }
}

struct Fail(NjcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> NjcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NjcStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            NjcStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    // SAFETY: caller guarantees p is null or valid for reads
    unsafe { p.as_ref() }.ok_or_else(|| Fail(NjcStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write<T>(p: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(Fail(NjcStatus::NullPointer, format!("{what} is null")));
    }
    // SAFETY: non-null and, by contract, valid for writes
    unsafe { p.write(value) };
    Ok(())
}

fn single_params(p: &NjcSingleParams) -> Result<SingleModeParams, Fail> {
    Ok(SingleModeParams::new(p.omega, p.lambda, p.k, p.delta)?)
}

fn two_params(p: &NjcTwoParams) -> Result<TwoModeParams, Fail> {
    Ok(TwoModeParams::new(p.omega1, p.omega2, p.lambda, p.k, p.delta)?)
}

fn single_state(s: &NjcState) -> Result<&FockVector, Fail> {
    match &s.0 {
        StateKind::Single(f) => Ok(f),
        StateKind::Paired(_) => Err(Fail(NjcStatus::WrongModel, "expected a single-mode state".into())),
    }
}

fn paired_state(s: &NjcState) -> Result<&PairedFockVector, Fail> {
    match &s.0 {
        StateKind::Paired(f) => Ok(f),
        StateKind::Single(_) => Err(Fail(NjcStatus::WrongModel, "expected a paired two-mode state".into())),
    }
}

impl From<SingleRecord> for NjcSingleRecord {
    fn from(r: SingleRecord) -> Self {
        Self { time: r.time, inversion: r.inversion, linear_entropy: r.linear_entropy, coherence: r.coherence }
    }
}

impl From<EntanglementRecord> for NjcTwoRecord {
    fn from(r: EntanglementRecord) -> Self {
        Self {
            time: r.time,
            inversion: r.w_t,
            tangle_a_ff: r.tangle_a_ff,
            tangle_af1_f2: r.tangle_af1_f2,
            tangle_af2_f1: r.tangle_af2_f1,
            relative_entropy: r.relative_entropy,
            coherence: r.coherence,
        }
    }
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len - 1` bytes). Returns the full message length in bytes,
/// or 0 if there is none.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes of writes.
#[no_mangle]
pub unsafe extern "C" fn njc_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            // SAFETY: buf holds at least len bytes
            unsafe {
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}

/// Critical detuning of the single-mode model at mean photon number `n_bar`.
/// `params->delta` is ignored.
///
/// # Safety
/// `params` and `out` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn njc_critical_detuning_single(
    n_bar: f64,
    params: *const NjcSingleParams,
    out: *mut f64,
) -> NjcStatus {
    guard(|| {
        let p = single_params(unsafe { deref(params, "params") }?)?;
        unsafe { write(out, critical_detuning_single(n_bar, &p)?, "out") }
    })
}

/// Critical detuning of the two-mode model at total mean photon number
/// `n_total`. `params->delta` is ignored.
///
/// # Safety
/// `params` and `out` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn njc_critical_detuning_two(
    n_total: f64,
    params: *const NjcTwoParams,
    out: *mut f64,
) -> NjcStatus {
    guard(|| {
        let p = two_params(unsafe { deref(params, "params") }?)?;
        unsafe { write(out, critical_detuning_two(n_total, &p)?, "out") }
    })
}

fn make_state(family: StateFamily, n_max: usize, out: *mut *mut NjcState) -> NjcStatus {
    guard(|| {
        let n = if n_max == 0 { family.auto_truncation(DEFAULT_TAIL_TOL) } else { n_max };
        let kind = if family.is_paired() {
            StateKind::Paired(family.paired(n, DEFAULT_TAIL_TOL)?)
        } else {
            StateKind::Single(family.single(n, DEFAULT_TAIL_TOL)?)
        };
        let handle = Box::into_raw(Box::new(NjcState(kind)));
        // SAFETY: out checked inside write; on failure the box is reclaimed
        if let Err(e) = unsafe { write(out, handle, "out") } {
            drop(unsafe { Box::from_raw(handle) });
            return Err(e);
        }
        Ok(())
    })
}

/// Coherent state `|α⟩`, `α = re + i·im`, cut at `n_max` (0 picks the cutoff
/// automatically).
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn njc_state_coherent(re: f64, im: f64, n_max: usize, out: *mut *mut NjcState) -> NjcStatus {
    make_state(StateFamily::Coherent { alpha: Complex64::new(re, im) }, n_max, out)
}

/// Squeezed vacuum with squeeze parameter `r` and phase `theta`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn njc_state_squeezed_vacuum(
    r: f64,
    theta: f64,
    n_max: usize,
    out: *mut *mut NjcState,
) -> NjcStatus {
    make_state(StateFamily::SqueezedVacuum { r, theta }, n_max, out)
}

/// Pair coherent state with `ζ = re + i·im`; `n_max` bounds the pair index.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn njc_state_pair_coherent(re: f64, im: f64, n_max: usize, out: *mut *mut NjcState) -> NjcStatus {
    make_state(StateFamily::PairCoherent { zeta: Complex64::new(re, im) }, n_max, out)
}

/// Two-mode squeezed vacuum with squeeze parameter `r`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn njc_state_two_mode_squeezed(r: f64, n_max: usize, out: *mut *mut NjcState) -> NjcStatus {
    make_state(StateFamily::TwoModeSqueezed { r }, n_max, out)
}

/// Releases a state. Null is accepted.
///
/// # Safety
/// `state` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn njc_state_free(state: *mut NjcState) {
    if !state.is_null() {
        // SAFETY: allocated by make_state
        drop(unsafe { Box::from_raw(state) });
    }
}

/// Cutoff of the state (largest photon or pair number kept).
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn njc_state_n_max(state: *const NjcState, out: *mut usize) -> NjcStatus {
    guard(|| {
        let n = match &unsafe { deref(state, "state") }?.0 {
            StateKind::Single(f) => f.n_max(),
            StateKind::Paired(f) => f.n_max(),
        };
        unsafe { write(out, n, "out") }
    })
}

/// Mean photon number (summed over both modes for paired states).
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn njc_state_mean_photon_number(state: *const NjcState, out: *mut f64) -> NjcStatus {
    guard(|| {
        let n = match &unsafe { deref(state, "state") }?.0 {
            StateKind::Single(f) => f.mean_photon_number(),
            StateKind::Paired(f) => f.mean_photon_number(),
        };
        unsafe { write(out, n, "out") }
    })
}

/// Observables at time `t` for the atom starting excited.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn njc_single_record(
    state: *const NjcState,
    params: *const NjcSingleParams,
    t: f64,
    out: *mut NjcSingleRecord,
) -> NjcStatus {
    guard(|| {
        let field = single_state(unsafe { deref(state, "state") }?)?;
        let p = single_params(unsafe { deref(params, "params") }?)?;
        if !t.is_finite() {
            return Err(Fail(NjcStatus::InvalidParameter, "t must be finite".into()));
        }
        unsafe { write(out, evolve_single(field, &p, t).record().into(), "out") }
    })
}

/// Tangles, relative entropy and inversion at time `t`.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn njc_two_record(
    state: *const NjcState,
    params: *const NjcTwoParams,
    t: f64,
    out: *mut NjcTwoRecord,
) -> NjcStatus {
    guard(|| {
        let field = paired_state(unsafe { deref(state, "state") }?)?;
        let p = two_params(unsafe { deref(params, "params") }?)?;
        if !t.is_finite() {
            return Err(Fail(NjcStatus::InvalidParameter, "t must be finite".into()));
        }
        unsafe { write(out, evolve_two(field, &p, t).record()?.into(), "out") }
    })
}

unsafe fn fill<T: Copy>(records: &[T], buf: *mut T, capacity: usize, written: *mut usize) -> Result<(), Fail> {
    unsafe { write(written, records.len(), "written") }?;
    if records.len() > capacity {
        return Err(Fail(NjcStatus::BufferTooSmall, format!("{} records needed, capacity {capacity}", records.len())));
    }
    if buf.is_null() {
        return Err(Fail(NjcStatus::NullPointer, "buffer is null".into()));
    }
    // SAFETY: buf holds capacity >= len records
    unsafe { ptr::copy_nonoverlapping(records.as_ptr(), buf, records.len()) };
    Ok(())
}

/// Samples at `t = j·dt`, `j = 0..=t_max/dt`. `*written` receives the number
/// of samples even when the buffer is too small.
///
/// # Safety
/// Pointers must be null or valid; `buf` must hold `capacity` records.
#[no_mangle]
pub unsafe extern "C" fn njc_single_timeseries(
    state: *const NjcState,
    params: *const NjcSingleParams,
    t_max: f64,
    dt: f64,
    buf: *mut NjcSingleRecord,
    capacity: usize,
    written: *mut usize,
) -> NjcStatus {
    guard(|| {
        let field = single_state(unsafe { deref(state, "state") }?)?;
        let p = single_params(unsafe { deref(params, "params") }?)?;
        let grid = TimeGrid::new(t_max, dt)?;
        if grid.len() > capacity {
            unsafe { write(written, grid.len(), "written") }?;
            return Err(Fail(NjcStatus::BufferTooSmall, format!("{} records needed, capacity {capacity}", grid.len())));
        }
        let records: Vec<NjcSingleRecord> = single_timeseries(field, &p, &grid).into_iter().map(Into::into).collect();
        unsafe { fill(&records, buf, capacity, written) }
    })
}

/// Two-mode counterpart of [`njc_single_timeseries`].
///
/// # Safety
/// Pointers must be null or valid; `buf` must hold `capacity` records.
#[no_mangle]
pub unsafe extern "C" fn njc_two_timeseries(
    state: *const NjcState,
    params: *const NjcTwoParams,
    t_max: f64,
    dt: f64,
    buf: *mut NjcTwoRecord,
    capacity: usize,
    written: *mut usize,
) -> NjcStatus {
    guard(|| {
        let field = paired_state(unsafe { deref(state, "state") }?)?;
        let p = two_params(unsafe { deref(params, "params") }?)?;
        let grid = TimeGrid::new(t_max, dt)?;
        if grid.len() > capacity {
            unsafe { write(written, grid.len(), "written") }?;
            return Err(Fail(NjcStatus::BufferTooSmall, format!("{} records needed, capacity {capacity}", grid.len())));
        }
        let records: Vec<NjcTwoRecord> = two_timeseries(field, &p, &grid)?.into_iter().map(Into::into).collect();
        unsafe { fill(&records, buf, capacity, written) }
    })
}

/// Time average of the linear entropy over `[0, t_max]` (trapezoid rule, step `dt`).
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn njc_mean_linear_entropy(
    state: *const NjcState,
    params: *const NjcSingleParams,
    t_max: f64,
    dt: f64,
    out: *mut f64,
) -> NjcStatus {
    guard(|| {
        let field = single_state(unsafe { deref(state, "state") }?)?;
        let p = single_params(unsafe { deref(params, "params") }?)?;
        unsafe { write(out, mean_linear_entropy(field, &p, t_max, dt)?, "out") }
    })
}

/// Time averages of every two-mode measure; `out->time` is set to `t_max`.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn njc_mean_measures(
    state: *const NjcState,
    params: *const NjcTwoParams,
    t_max: f64,
    dt: f64,
    out: *mut NjcTwoRecord,
) -> NjcStatus {
    guard(|| {
        let field = paired_state(unsafe { deref(state, "state") }?)?;
        let p = two_params(unsafe { deref(params, "params") }?)?;
        unsafe { write(out, mean_measures(field, &p, t_max, dt)?.into(), "out") }
    })
}
