#![allow(clippy::excessive_precision, clippy::unreadable_literal)]

//! Taylor coefficients of the Riemann–Siegel correction functions C₀..C₃ in
//! powers of `x = p - 1/2`, where `p` is the fractional part of `sqrt(t/2π)`.
//!
//! C₀ and C₂ are even in `x`, C₁ and C₃ odd; each table stores the nonzero
//! coefficients, lowest degree first. Generated at 120 digits from the series
//! of Ψ(p) = cos(2π(p² − p − 1/16)) / cos(2πp) and truncated once
//! `|coeff|·2^-deg < 1e-19`.

pub(super) const C0: [f64; 22] = [
    0.3826834323650898,
    1.7489618723100817,
    2.118025207685496,
    -0.8707216670511481,
    -3.4733112243465167,
    -1.6626947308999325,
    1.216731288919232,
    1.3014304161007977,
    0.03051102182736167,
    -0.3755803051545095,
    -0.1085784416564066,
    0.051832902999549624,
    0.029999480619902277,
    -0.0022759396706125644,
    -0.004382647416580339,
    -0.0004064230183729847,
    0.0004006097785422114,
    8.971057991388841e-05,
    -2.3025650027239108e-05,
    -9.380006601906792e-06,
    6.323514947609108e-07,
    6.551022819231502e-07,
];

pub(super) const C1: [f64; 22] = [
    -0.053650205256750697,
    0.11027818741081483,
    1.2317200154315227,
    1.2634964862799458,
    -1.695108997559503,
    -2.9998711967650102,
    -0.10819944959899208,
    1.9407662946212714,
    0.7838423561500687,
    -0.5054829667900366,
    -0.38450723496057976,
    0.03747264646531532,
    0.09092026610973176,
    0.01044923755006451,
    -0.012582979651583417,
    -0.003399503721151274,
    0.0010410950537714891,
    0.0005010949051118486,
    -3.956359669003182e-05,
    -4.7624592453571896e-05,
    -1.8539355338085133e-06,
    3.1936918080068973e-06,
];

pub(super) const C2: [f64; 23] = [
    0.005188542830293168,
    0.0012378633552253898,
    -0.18137505725166997,
    0.14291492748532125,
    1.3303391766687565,
    0.3522472353403734,
    -2.421001595891951,
    -1.6760787022538108,
    1.3689416723328371,
    1.5539019430222982,
    -0.1722164273472998,
    -0.6359068055045431,
    -0.09911649873041208,
    0.14033480067387008,
    0.04782352019827292,
    -0.017356040641479782,
    -0.010225012534028593,
    0.0009274149159794888,
    0.0013572194372373386,
    6.41369012029388e-05,
    -0.0001230080569819663,
    -1.83135074047892e-05,
    7.821628604322627e-06,
];

pub(super) const C3: [f64; 23] = [
    -0.0026794321814389136,
    0.02995372109103515,
    -0.042570172541828696,
    -0.28997965779803886,
    0.4888831999235446,
    1.230855876395746,
    -0.8297560708527408,
    -2.249763536666567,
    0.07845139961005472,
    1.7467492800868893,
    0.45968080979749937,
    -0.6619353471039775,
    -0.31590441036173633,
    0.12844792545207495,
    0.10073382716626152,
    -0.009530183848825268,
    -0.019264421687514088,
    -0.001246463715876929,
    0.0024243969641103086,
    0.000437647697741857,
    -0.00020714032687001792,
    -6.274344504186516e-05,
    1.157534381459567e-05,
];
