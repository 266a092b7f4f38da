#include "doctest.h"
#include "fixtures.hpp"
#include "ttw/repanalysis.hpp"

#include <cmath>

using namespace ttw;
using ttw::testing::default_realization;
using ttw::testing::fractional_realization;
using doctest::Approx;

TEST_CASE("Yhat even block at n = 1")
{
    const Realization& r = default_realization();
    const OperatorMatrix yh = r.build(GeneratorId::Yhat);
    const int z = r.index_of({Sector::zero_fermion, 1, 0});
    const int t = r.index_of({Sector::two_fermion, 1, 0});
    CHECK(yh.entries(z, z) == Approx(8).epsilon(1e-10));
    CHECK(yh.entries(t, t) == Approx(-7).epsilon(1e-10));
    CHECK(std::abs(yh.entries(z, t)) == Approx(std::sqrt(54.0)).epsilon(1e-10));

    const YhatAnalysis a = yhat_blocks(r, yh);
    CHECK(a.even_blocks.size() == 5 * 6);
    const YhatEvenBlock& b = a.even_blocks.front();
    CHECK(b.eigenvalues[0] == Approx(11));
    CHECK(b.eigenvalues[1] == Approx(-10));
    const MixingCoeffs mc = mixing_coeffs(r.params(), 1);
    CHECK(b.eigenvectors(0, 0) == Approx(mc.A_plus));
    CHECK(b.eigenvectors(1, 0) == Approx(mc.B_plus));
    CHECK(b.eigenvectors(0, 1) == Approx(mc.A_minus));
    CHECK(b.eigenvectors(1, 1) == Approx(mc.B_minus));
    CHECK(a.orthogonality_defect < 1e-14);
    CHECK(a.offdiag_unmixed < 1e-9);
}

TEST_CASE("Yhat on odd states")
{
    const Realization& r = default_realization();
    const YhatAnalysis a = yhat_blocks(r, r.build(GeneratorId::Yhat));
    for (const auto& [i, v] : a.diagonal) {
        const BasisIndex& b = r.basis()[i];
        const double qp = 0.5 * (1 + (2 * b.n + 5) * 3.0), qm = 1 - qp;
        if (b.sector == Sector::one_fermion_plus) CHECK(v == Approx(qp - 0.5));
        if (b.sector == Sector::one_fermion_minus) CHECK(v == Approx(qm - 0.5));
        if (b.sector == Sector::zero_fermion) CHECK(v == Approx(tau_q(r.params(), 0).tau));
    }
}

TEST_CASE("chiral matrix elements")
{
    const Realization& r = default_realization();
    const AlgebraMatrices alg = AlgebraMatrices::build(r, GeneratorSet::chiral);
    const YhatAnalysis yh = yhat_blocks(r, alg.Y);
    const MatrixElementReport rep = matrix_element_check(r, alg, yh);
    CHECK(rep.checks.size() == 4 * 5 * 5);
    CHECK(rep.max_residual < 1e-9);
    CHECK(rep.max_vhat_even_image_norm < 1e-12);
    for (const auto& c : rep.checks)
        if (c.family == "What_minus|q+)" && c.N == 0) CHECK(c.expected == 0);
}

TEST_CASE("chiral census")
{
    for (const Realization* r : {&default_realization(), &fractional_realization()}) {
        const Classification c = classify(*r, GeneratorSet::chiral);
        CHECK(c.blocks.size() == static_cast<std::size_t>(2 * r->trunc().n_max + 1));
        for (const auto& b : c.blocks) {
            CHECK(b.atypical);
            CHECK(b.lws_kernel_dim == 1);
            CHECK(b.towers.size() == 2);
            const double tau = tau_q(r->params(), b.n).tau;
            const bool first = std::abs(b.tau - tau) < 1e-7 && std::abs(b.weight - tau) < 1e-7;
            const bool second = std::abs(b.tau - tau + 0.5) < 1e-7 && std::abs(b.weight + tau - 0.5) < 1e-7;
            CHECK((first || (second && b.n > 0)));
        }
        CHECK(c.centrality_c2 < 1e-6);
        CHECK(c.centrality_c3 < 1e-6);
    }
}

TEST_CASE("standard census")
{
    const Realization& r = default_realization();
    const Classification c = classify(r, GeneratorSet::standard);
    REQUIRE(c.blocks.size() == 6);
    for (const auto& b : c.blocks) {
        const TauQ tq = tau_q(r.params(), b.n);
        CHECK(b.tau == Approx(tq.tau));
        CHECK(b.weight == Approx(tq.q));
        if (b.n == 0) {
            CHECK(b.atypical);
            CHECK(b.towers.size() == 2);
            CHECK(b.c2.max_abs < 1e-7);
        } else {
            CHECK_FALSE(b.atypical);
            CHECK(b.towers.size() == 4);
            CHECK(b.c2.spread < 1e-6);
            CHECK(b.c3.spread < 1e-6);
            // |tau,tau,q> is killed by K- and W- but not by V-
            CHECK(b.ground_lowering[0] < 1e-9);
            CHECK(b.ground_lowering[2] < 1e-9);
            CHECK(b.ground_lowering[1] == Approx(std::sqrt(b.n * 3.0)));
        }
    }
}

TEST_CASE("casimirs commute with the generators")
{
    const Realization& r = fractional_realization();
    const AlgebraMatrices alg = AlgebraMatrices::build(r, GeneratorSet::standard);
    const CasimirMatrices c = casimirs(alg);
    const auto deep = r.interior(2);
    for (const auto& name : AlgebraMatrices::names())
        CHECK(max_abs(restrict(graded_bracket(c.C2, alg.by_name(name)).entries, deep, deep)) < 1e-8);
}

TEST_CASE("equivalent forms of Yhat")
{
    const YhatForms f = yhat_forms(default_realization());
    for (double x : f.vs_differential) CHECK(x < 1e-9);
    CHECK(f.max_pairwise < 1e-9);
}

TEST_CASE("n = 0 degeneration")
{
    const Degeneration d = n0_degeneration(fractional_realization());
    CHECK(d.min_overlap == Approx(1).epsilon(1e-10));
    CHECK(d.max_overlap == Approx(1).epsilon(1e-10));
    CHECK(d.max_two_fermion_norm < 1e-10);
    CHECK(d.completeness < 1e-10);
}

TEST_CASE("connected blocks")
{
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    m(0, 2) = 1.0;
    m(3, 1) = 1e-9;
    const auto blocks = connected_blocks({&m}, 1e-8);
    REQUIRE(blocks.size() == 3);
    CHECK(blocks[0] == std::vector<int>{0, 2});
}

TEST_CASE("classification serialises")
{
    const nlohmann::json j = classify(fractional_realization(), GeneratorSet::chiral);
    CHECK(j["generator_set"] == "chiral");
    CHECK(j["blocks"][0]["kind"] == "atypical");
    CHECK(j["blocks"][0]["lws"].is_array());
}
