#include "taylor/quadrature.hpp"

namespace taylor {
namespace {
constexpr double rule8_chi[] = {
    0.006531815708567918290236,
    0.09086744584657728648512,
    0.3967966533375877679508,
    1.027856640525645700627,
    1.945288592909266013404,
    2.980147933889639651584,
    3.998861349951123044204,
};
constexpr double rule8_w[] = {
    0.02462194198995203157808,
    0.1701315866854178098336,
    0.4609256358650077235927,
    0.7947291148621894268169,
    1.008710414337932589256,
    1.036093649726215581419,
    1.004787656533284837504,
};
constexpr AlpertRule rule8{8, 5, 7, rule8_chi, rule8_w};

constexpr double rule16_chi[] = {
    0.00002291979783683357249376,
    0.0006334842183631397780136,
    0.003795846791454058755932,
    0.01293527837367323360215,
    0.03275606591444316231183,
    0.06898859471139657197498,
    0.128077387469592953915,
    0.2168240183045296308575,
    0.3420008972671947311774,
    0.5099533027021332899393,
    0.7262076735742308586134,
    0.9951040343313826037577,
    1.319469515602072740411,
    1.700348292354771463019,
    2.136800955480334540944,
    2.625783459755852675406,
    3.162112471636315109358,
    3.738520314197026356683,
    4.345798926874724705356,
    4.973028484186077822191,
    5.607882710051321991765,
    6.236999635665002200713,
    6.846403718841030161407,
    7.421962992465441713206,
    7.949863337347695962394,
    8.417081155938943100269,
    8.811835728951779169808,
    9.124003563990375762905,
    9.345480655375962359127,
    9.470511018507007132867,
};
constexpr double rule16_w[] = {
    0.0001736956966188173799327,
    0.001022943915304265053587,
    0.006757693361888712718739,
    0.01079054454774205498373,
    0.03207665563893832425792,
    0.03836835235609936564626,
    0.08496278536916441704098,
    0.08866753691193734320906,
    0.1688014162009984722831,
    0.1608589537889118604841,
    0.2807434485478828511874,
    0.2478834152997467133927,
    0.4120468314670865065604,
    0.3370171325217854943925,
    0.5496280467009595964182,
    0.4112422476656850783095,
    0.6788280292393607405941,
    0.4507913301518912333722,
    0.7876361421408294709929,
    0.433403885326034709047,
    0.8737434969587792243006,
    0.3299662082168986765217,
    0.9568986406181097985067,
    0.1001292459522605489119,
    1.046302895125162561961,
    -0.1033470617383810579443,
    0.5517377778774190367525,
    0.6695809966539807762954,
    -0.1369823750319966627651,
    0.03026908851890107013518,
};
constexpr AlpertRule rule16{16, 10, 30, rule16_chi, rule16_w};

}  // namespace

const AlpertRule& alpert_log_rule(int order) {
    switch (order) {
        case 8: return rule8;
        case 16: return rule16;
        default: throw std::invalid_argument("alpert_log_rule: order must be 8 or 16");
    }
}

}  // namespace taylor
