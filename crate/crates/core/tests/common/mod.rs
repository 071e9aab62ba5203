//! Reference values and oracles shared by the integration tests.

#![allow(dead_code, clippy::excessive_precision)]

use index_transforms::specfun::EULER_GAMMA;

// (tau, x, Re I, Im I, K)
#[rustfmt::skip]
pub const GRID: [(f64, f64, f64, f64, f64); 25] = [
    (0.5, 0.5, 1.1321695737202050486, -5.7996611555706567551e-1, 7.9173430541261811662e-1),
    (0.5, 1.0, 1.4440165142331278256, -2.8132156861029880848e-1, 3.8404301690509269863e-1),
    (0.5, 2.0, 2.4904853295894434218, -7.920683555109428028e-2, 1.0812833240911413378e-1),
    (0.5, 5.0, 2.8025853684631220894e+1, -2.642534858231323429e-3, 3.6074271313261712002e-3),
    (0.5, 10.0, 2.8531607464351490206e+3, -1.2869831557525157515e-5, 1.7569107704141347831e-5),
    (1.0, 0.5, 8.6999736320475443904e-1, -1.7770016885719335152, 4.8339609004387797407e-1),
    (1.0, 1.0, 1.9007996758194253617, -1.0639600135544408219, 2.8942803702599212763e-1),
    (1.0, 2.0, 3.2174906632719612254, -3.3961614834290053288e-1, 9.2385459890391181537e-2),
    (1.0, 5.0, 3.0542593924781221926e+1, -1.2377721889973096752e-2, 3.3670999885610447448e-3),
    (1.0, 10.0, 2.968640799269459029e+3, -6.2312225984811865745e-5, 1.6950735948481493804e-5),
    (2.0, 0.5, -6.4595404378048512495, -1.4063985380291348569, 1.6502018949481442656e-2),
    (2.0, 1.0, -3.0760240414883722754e-1, -6.8706518846869085698, 8.061699762236597857e-2),
    (2.0, 2.0, 7.1610992175764515384, -4.0906694129688500998, 4.7997990856470642072e-2),
    (2.0, 5.0, 4.3539420213535249511e+1, -2.1728033706987457088e-1, 2.5494652779584352942e-3),
    (2.0, 10.0, 3.4816279238981979527e+3, -1.2512886628484494307e-3, 1.4682032629621981049e-5),
    (4.0, 0.5, -1.6739847800472991964, -1.0719774382739276299e+2, 2.3488760404256112018e-3),
    (4.0, 1.0, 4.510041802170379357e+1, 9.8610407191186705719e+1, -2.1607135982353010182e-3),
    (4.0, 2.0, -9.4493429154458693909e+1, -6.3672268068576167404e+1, 1.3951624312788746703e-3),
    (4.0, 5.0, 2.0355488367042215915e+2, -3.661715082399864578e+1, 8.0234103040108021335e-4),
    (4.0, 10.0, 6.6669684355604649578e+3, -3.7487353413034227256e-1, 8.2140857733558667648e-6),
    (8.0, 0.5, -3.5663692472430773259e+3, -4.0327114065985161939e+4, 3.0815284471379456306e-6),
    (8.0, 1.0, -3.048617204468016533e+4, -2.6817115141351555347e+4, 2.0491846513745755926e-6),
    (8.0, 2.0, -4.084464474195720338e+4, 4.4961919201011447729e+3, -3.4356892692378154024e-7),
    (8.0, 5.0, -4.4004240275837044285e+4, -1.159827361243626866e+4, 8.8626252838057217688e-7),
    (8.0, 10.0, 1.2033704180995671712e+5, -9.399295769930433758e+3, 7.1823134307878761509e-7),
];

// (z, e^z E_1(z))
#[rustfmt::skip]
pub const E1_POINTS: [(f64, f64); 7] = [
    (1e-4, 8.6340880702127253302),
    (0.3, 1.2225356050805855565),
    (1.0, 5.9634736232319407434e-1),
    (2.5, 3.0352583648598409918e-1),
    (10.0, 9.1563333939788081876e-2),
    (100.0, 9.9019422867330184064e-3),
    (650.0, 1.5361019238073829186e-3),
];

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// e^z E_1(z): ascending series for z <= 1, continued fraction beyond.
pub fn e1_oracle(z: f64) -> f64 {
    if z <= 1.0 {
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..200 {
            term *= -z / k as f64;
            let t = term / k as f64;
            sum += t;
            if t.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        (-EULER_GAMMA - z.ln() - sum) * z.exp()
    } else {
        // e^z E_1(z) = 1/(z+1- 1/(z+3- 4/(z+5- ...))), modified Lentz.
        let tiny = 1e-300;
        let mut f = z + 1.0;
        let mut c = f;
        let mut d = 0.0;
        for k in 1..100_000 {
            let a = -((k * k) as f64);
            let b = z + 1.0 + 2.0 * k as f64;
            d = b + a * d;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + a / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = c * d;
            f *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        1.0 / f
    }
}
