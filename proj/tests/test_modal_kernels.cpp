#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "taylor/errors.hpp"
#include "taylor/modal_kernels.hpp"
#include "taylor/quadrature.hpp"
#include "taylor/specfun.hpp"

using namespace taylor;
using cd = std::complex<double>;

namespace {

// Direct adaptive quadrature of the unsplit oscillatory integrand; the
// independent oracle every kernel family must match.
cd direct_g(double r, double z, double rp, double zp, double lam, int ell) {
    auto f = [=](double th) {
        double R = std::sqrt(r * r + rp * rp + (z - zp) * (z - zp) -
                             2 * r * rp * std::cos(th));
        return std::exp(cd(0, lam * R)) / (4 * M_PI * R) * std::cos(ell * th);
    };
    return integrate_adaptive(f, 0.0, M_PI, 1e-13, cd{}) / M_PI;
}

double chi_of(double r, double z, double rp, double zp) {
    return (r * r + rp * rp + (z - zp) * (z - zp)) / (2 * r * rp);
}

}  // namespace

TEST_CASE("static limit reduces to the Legendre Q closed forms") {
    KernelArgs a{1.0, 0.0, 1.3, 0.4, 0.0, 0};
    double chi = chi_of(1.0, 0.0, 1.3, 0.4);
    auto q = legendre_Q_halves(chi);
    double scale = 1.0 / (4 * M_PI * M_PI * std::sqrt(1.3));
    CHECK(std::abs(modal_g(a) - q.Qm * scale) < 1e-15);
    auto t = modal_trig(a);
    CHECK(std::abs(t.g_cos - q.Qp * scale) < 1e-15);
    CHECK(std::abs(t.g_sin) == 0.0);
    CHECK(std::abs(modal_g(a).imag()) == 0.0);
}

TEST_CASE("frozen anchor values at lambda = 2") {
    KernelArgs a{1.0, 0.0, 1.2, 0.3, 2.0, 0};
    CHECK(std::abs(modal_g(a) - cd(-0.006872137830845452, 0.026515746330184306)) < 1e-12);
    a.ell = 1;
    CHECK(std::abs(modal_g(a) - cd(0.018709454726849014, 0.043092761144608124)) < 1e-12);
    a.ell = 2;
    CHECK(std::abs(modal_g(a) - cd(0.027958377153745317, 0.014393756740791058)) < 1e-12);
    a.ell = 1;
    auto t = modal_trig(a);
    CHECK(std::abs(t.g_cos - cd(0.010543119661449933, 0.020454751535487682)) < 1e-12);
    CHECK(std::abs(t.g_sin - cd(-0.006060994794696624, -0.017415257492295384)) < 1e-12);
    KernelArgs b{1.1, -0.2, 0.9, 0.35, 2.5, 2};
    CHECK(std::abs(modal_g(b) - cd(0.013470062817432275, 0.020718341262182002)) < 1e-12);
}

TEST_CASE("kernel symmetry under source-target swap") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(0.6, 1.8), V(-0.8, 0.8);
    for (int trial = 0; trial < 100; ++trial) {
        double r = U(rng), rp = U(rng), z = V(rng), zp = V(rng);
        if (chi_of(r, z, rp, zp) < 1.0 + 1e-6) continue;
        int ell = trial % 3;
        KernelArgs a{r, z, rp, zp, 2.5, ell};
        KernelArgs b{rp, zp, r, z, 2.5, ell};
        CHECK(std::abs(modal_g(a) - modal_g(b)) < 1e-12);
    }
}

TEST_CASE("oracle grid: split evaluation matches direct quadrature") {
    // sources and targets on two small circles, three wavenumbers
    int cases = 0;
    for (int i = 0; i < 5; ++i) {
        double ti = 2 * M_PI * i / 5.0;
        double r = 1.0 + 0.3 * std::cos(ti), z = 0.4 * std::sin(ti);
        for (int j = 0; j < 5; ++j) {
            double tj = 2 * M_PI * (j + 0.5) / 5.0;
            double rp = 1.1 + 0.25 * std::cos(tj), zp = 0.1 + 0.35 * std::sin(tj);
            for (double lam : {0.0, 1.7, 4.2}) {
                for (int ell : {0, 1, 2, 3}) {
                    KernelArgs a{r, z, rp, zp, lam, ell};
                    CHECK(std::abs(modal_g(a) - direct_g(r, z, rp, zp, lam, ell)) < 1e-10);
                    ++cases;
                }
            }
        }
    }
    CHECK(cases == 300);
    // trig family against direct quadrature with explicit cos/sin weights
    KernelArgs a{1.0, 0.0, 1.2, 0.3, 2.0, 1};
    auto t = modal_trig(a);
    cd gc = 0.5 * (direct_g(1, 0, 1.2, 0.3, 2, 2) + direct_g(1, 0, 1.2, 0.3, 2, 0));
    CHECK(std::abs(t.g_cos - gc) < 1e-10);
}

TEST_CASE("gradients match centered finite differences") {
    const double h = 1e-5;
    for (double lam : {0.0, 2.0}) {
        for (int ell : {0, 1, 2}) {
            KernelArgs a{1.0, 0.0, 1.4, 0.2, lam, ell};
            auto g = modal_grad(a);
            auto vp = modal_all({1.0 + h, 0.0, 1.4, 0.2, lam, ell}, false);
            auto vm = modal_all({1.0 - h, 0.0, 1.4, 0.2, lam, ell}, false);
            CHECK(std::abs(g.dg_dr - (vp.g - vm.g) / (2 * h)) < 1e-7);
            CHECK(std::abs(g.dgcos_dr - (vp.g_cos - vm.g_cos) / (2 * h)) < 1e-7);
            CHECK(std::abs(g.dgsin_dr - (vp.g_sin - vm.g_sin) / (2 * h)) < 1e-7);
            vp = modal_all({1.0, h, 1.4, 0.2, lam, ell}, false);
            vm = modal_all({1.0, -h, 1.4, 0.2, lam, ell}, false);
            CHECK(std::abs(g.dg_dz - (vp.g - vm.g) / (2 * h)) < 1e-7);
            CHECK(std::abs(g.dgcos_dz - (vp.g_cos - vm.g_cos) / (2 * h)) < 1e-7);
            CHECK(std::abs(g.dgsin_dz - (vp.g_sin - vm.g_sin) / (2 * h)) < 1e-7);
            if (lam == 0.0) {
                CHECK(std::abs(g.dg_dr.imag()) == 0.0);
                CHECK(std::abs(g.dg_dz.imag()) == 0.0);
            }
        }
    }
}

TEST_CASE("dependence on z only through z - z'") {
    KernelArgs a{1.0, 0.1, 1.4, 0.2, 2.0, 1};
    auto g = modal_grad(a);
    const double h = 1e-5;
    cd gp = modal_g({1.0, 0.1, 1.4, 0.2 + h, 2.0, 1});
    cd gm = modal_g({1.0, 0.1, 1.4, 0.2 - h, 2.0, 1});
    CHECK(std::abs(g.dg_dz + (gp - gm) / (2 * h)) < 1e-8);
}

TEST_CASE("imaginary part vanishes with lambda") {
    // Im g_0 = lambda/(4 pi) + O(lambda^3) exactly (the ell = 0 average of
    // the smooth part), so it vanishes linearly; higher modes kill the
    // leading term by orthogonality and vanish much faster.
    KernelArgs a{1.0, 0.0, 1.25, 0.3, 1e-8, 0};
    CHECK(modal_g(a).imag() == doctest::Approx(1e-8 / (4 * M_PI)).epsilon(1e-4));
    for (int ell : {1, 2}) {
        a.ell = ell;
        CHECK(std::abs(modal_g(a).imag()) < 1e-12);
    }
}

TEST_CASE("mode magnitude decays in ell") {
    // monotone decay is a property of the static kernel (Q_{l-1/2} falls
    // in l); at finite lambda the phase reorders low modes, so there we
    // only require decay once the modes outrun the oscillation.
    double prev = 1e300;
    for (int ell = 0; ell <= 8; ++ell) {
        double cur = std::abs(modal_g({1.0, 0.0, 1.3, 0.25, 0.0, ell}));
        CHECK(cur < prev);
        prev = cur;
    }
    prev = std::abs(modal_g({1.0, 0.0, 1.3, 0.25, 2.0, 2}));
    for (int ell = 3; ell <= 8; ++ell) {
        double cur = std::abs(modal_g({1.0, 0.0, 1.3, 0.25, 2.0, ell}));
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("near-diagonal smooth part") {
    KernelArgs coincident{1.0, 0.5, 1.0, 0.5, 3.0, 0};
    CHECK(std::abs(near_diagonal_smooth(coincident, 0.0) - cd(0, 3.0 / (4 * M_PI))) < 1e-16);
    KernelArgs still{1.0, 0.5, 1.0, 0.5, 0.0, 0};
    CHECK(std::abs(near_diagonal_smooth(still, 1.0)) == 0.0);
    // series against direct evaluation at a comfortable radius
    KernelArgs a{1.0, 0.0, 1.01, 0.02, 0.5, 0};
    double R = std::sqrt(0.01 * 0.01 + 0.02 * 0.02);  // theta = 0
    cd direct = (std::exp(cd(0, 0.5 * R)) - 1.0) / (4 * M_PI * R);
    CHECK(std::abs(near_diagonal_smooth(a, 0.0) - direct) < 1e-15);
}

namespace {

struct NearAnchor {
    KernelArgs args;
    cd g, dg_dr, dg_dz, g_cos, g_sin, dgc_dr, dgc_dz, dgs_dr, dgs_dz;
};

// Frozen from tools/kernel_near_oracle.py (mpmath, 40 digits, tanh-sinh on
// the unsplit integrand).  The separations straddle the chi = 2 switch
// between the recurrence statics and the adaptive sweep, and reach chi - 1
// ~ 8e-8 where double-precision direct quadrature cannot follow.
const NearAnchor kNearAnchors[] = {
    {{3.0, 0.1, 2.999, 0.1007, 2.3, 1},
     cd(0.0481962815100804181346, 0.0117748095746276030236),
     cd(-5.67225625896805362261, -0.00749982338212567716259),
     cd(3.96747388672744032226, 0.0000248266146203194755271),
     cd(0.052910819799036431622, 0.0150673050770231844911),
     cd(0.00069360200531999547571, 0.000275931196456643623026),
     cd(-5.68092690096355950493, 0.00217774345196126309069),
     cd(3.96747285121742024983, 0.0000230843506146950492055),
     cd(-0.00132739042081409221406, 0.00147417876946710345729),
     cd(-9.16123897103403591919e-7, 0.00000374984962288054825989)},
    {{3.0, 0.1, 2.999, 0.1007, 0.0, 2},
     cd(0.0609682706739072418175, 0.0),
     cd(-5.67641764559941821371, 0.0),
     cd(3.96736461588724890486, 0.0),
     cd(0.0620942516314401805445, 0.0),
     cd(0.0, 0.00450390363612857515421),
     cd(-5.6766023908746910446, 0.0),
     cd(3.9673625726274848689, 0.0),
     cd(0.0, -0.000764200262622523606399),
     cd(0.0, 0.00000948711558780372774753)},
    {{1.2, -0.4, 1.25, -0.355, 4.0, 2},
     cd(0.0216321384599274489785, 0.0290481989382990822302),
     cd(0.245467609903091385337, -0.0330214843716661012678),
     cd(0.217981255398717954307, 0.010481762984087058833),
     cd(0.0364962345223086516772, 0.0362388684181509069324),
     cd(0.00660072758427763192175, 0.000629319021676391778566),
     cd(0.209701164739999258244, 0.0133273058398894652513),
     cd(0.218098839139280526007, 0.00887371902734359683408),
     cd(-0.0194216020492043399205, 0.0256912034832335079476),
     cd(-0.00174289193629794493381, 0.00129792830759564693871)},
    {{0.7, 0.0, 1.9, 0.9, 2.0, 3},
     cd(0.00100765344127576648403, 0.00142309668179675938987),
     cd(0.00388754142088732221283, 0.00563706189342809035404),
     cd(0.00185125855925440539311, 0.000735552291219403747163),
     cd(-0.000601501935833200357636, 0.00357701302296010324011),
     cd(-0.00344158176368685499413, -0.000921212938849371786424),
     cd(-0.00114328415975120498755, 0.0089048655701530321779),
     cd(0.00252350961593509145617, 0.00294118016207308628508),
     cd(-0.00816651567525892425645, -0.00285287870459740245171),
     cd(-0.00288899326379793259598, 0.00204561224920644323825)},
    {{0.5, 0.0, 2.0, 1.2, 2.0, 3},
     cd(0.000146678135757807251438, 0.000474013433196634652473),
     cd(0.000814743967687117908241, 0.00273080165596798942682),
     cd(0.000506253864509586272385, 0.000349205449608917869972),
     cd(-0.000869708592247426068133, 0.00130718069467297009314),
     cd(-0.00127087613970454071874, -0.000921094395419276601289),
     cd(-0.00319981351664635839793, 0.00487382854990324094131),
     cd(0.000615409846739667313041, 0.00172578235598302312358),
     cd(-0.00459031173883378714266, -0.00359607996628271408338),
     cd(-0.0017064483595078847489, 0.000528041288728106105178)},
    {{1.05, 0.0, 1.0, 0.001, 1.0, 1},
     cd(0.0875491416639073638105, 0.0112583520724732818206),
     cd(-0.519206973901205896987, 0.00829920247972312063868),
     cd(0.00988788013708577307798, 0.00000239613342787371417635),
     cd(0.074693791533957146827, 0.0281830516236065102592),
     cd(-0.0275545510096337742773, 0.01020221204050441415),
     cd(-0.52976094335355196073, -0.00955833829337369997549),
     cd(0.0098630671700388558349, 0.0000108151425789905205238),
     cd(0.0106597800591659142188, -0.0261285897653809517372),
     cd(-0.0000107222400690221731624, 0.0000833801349180070131529)},
    // endpoint-corrected rules at n = 200 evaluate here: chi - 1 ~ 3.2e-13.
    // The offsets are dyadic (3*2^-22, 2^-20) so these decimals are exact doubles.
    {{1.5, 0.25, 1.5000007152557373046875, 0.25000095367431640625, 3.0, 1},
     cd(0.217554574625870606265, 0.0202032081088479778915),
     cd(8499.38021950149428519, 0.0047922983286504170021),
     cd(11332.5798546374533264, 1.05920628710263180991e-7),
     cd(0.209806829399988109568, 0.0315097392683349083514),
     cd(-0.00170764682885284986681, 0.00181003789854279079834),
     cd(8499.35089790094869512, -0.0246601987889217774277),
     cd(11332.5798546026941543, 1.08967437972266722176e-7),
     cd(-0.00639926264284655208463, -0.00637178625757975664332),
     cd(-8.56323177558569605409e-9, 9.22116050244712633491e-8)},
    // straddle the kink-substitution switch at chi - 1 = 1e-6
    {{1.4, 0.2, 1.40114, 0.20152, 3.0, 2},
     cd(0.0923585924995696315498, 0.0358860263649159495339),
     cd(5.65833938441260520064, -0.0289754313701674251326),
     cd(7.61562348997005622129, 0.000162409581644545087079),
     cd(0.103796264912938910983, 0.0255561994746203909648),
     cd(0.00516434659620281889676, -0.0085177314652550219193),
     cd(5.67874404374304555376, 0.00356330536377291470924),
     cd(7.61556558361219140822, 0.000130843997473277927765),
     cd(0.0110263655555077660401, 0.0225309760555501257869),
     cd(-0.0000556146730261197956068, 0.00014313351026342410971)},
    {{1.4, 0.2, 1.40126, 0.20168, 3.0, 2},
     cd(0.0905420368227568616818, 0.03588249468753504091),
     cd(5.11488016550287841043, -0.0289669408581375597527),
     cd(6.89013832689559950714, 0.000179505391621865407379),
     cd(0.101982175462799675786, 0.0255565806352936749408),
     cd(0.00516568786950124152998, -0.00851508011928079952738),
     cd(5.13527110507125946073, 0.00357577653066565742911),
     cd(6.89007511549026172568, 0.000144614909173843876187),
     cd(0.0110154355870826332559, 0.022541561799599517486),
     cd(-0.0000614575362531465239742, 0.000155075352450377851388)}};

void check_close(cd got, cd want) {
    CHECK(std::abs(got - want) < 1e-11 * std::max(1.0, std::abs(want)));
}

}  // namespace

TEST_CASE("near-diagonal values and gradients match the frozen baselines") {
    for (const NearAnchor& c : kNearAnchors) {
        const ModalKernelValue v = modal_all(c.args, true);
        check_close(v.g, c.g);
        check_close(v.grad.dg_dr, c.dg_dr);
        check_close(v.grad.dg_dz, c.dg_dz);
        check_close(v.g_cos, c.g_cos);
        check_close(v.g_sin, c.g_sin);
        check_close(v.grad.dgcos_dr, c.dgc_dr);
        check_close(v.grad.dgcos_dz, c.dgc_dz);
        check_close(v.grad.dgsin_dr, c.dgs_dr);
        check_close(v.grad.dgsin_dz, c.dgs_dz);
    }
}

TEST_CASE("the sweep stays finite at quadrature auxiliary-node distances") {
    // distances span what endpoint-corrected rules ask for at n up to 200
    for (double d : {1e-3, 4e-3, 2e-2, 0.1, 0.5}) {
        for (int ell : {0, 1, 2, 3}) {
            KernelArgs a{1.4, 0.2, 1.4 + 0.6 * d, 0.2 + 0.8 * d, 3.0, ell};
            const ModalKernelValue v = modal_all(a, true);
            for (cd x : {v.g, v.g_cos, v.g_sin, v.grad.dg_dr, v.grad.dg_dz,
                         v.grad.dgcos_dr, v.grad.dgcos_dz, v.grad.dgsin_dr,
                         v.grad.dgsin_dz})
                CHECK(std::isfinite(std::abs(x)));
        }
    }
}

TEST_CASE("guard rails") {
    KernelArgs coincident{1.0, 0.5, 1.0, 0.5, 2.0, 0};
    CHECK_THROWS_AS(modal_g(coincident), std::domain_error);
    KernelArgs offaxis{-1.0, 0.0, 1.2, 0.3, 2.0, 0};
    CHECK_THROWS_AS(modal_g(offaxis), std::domain_error);
    KernelArgs wild{1.0, 0.0, 1.3, 0.4, 150.0, 0};
    CHECK_THROWS_AS(modal_g(wild), AccuracyError);
}
