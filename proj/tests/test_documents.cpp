#include <gtest/gtest.h>

#include <random>

#include "gmra/cli/documents.hpp"
#include "gmra/fixtures.hpp"
#include "support/generators.hpp"

using namespace gmra;
using gmra::cli::Json;
using gmra::cli::SchemaError;

namespace {

/// Serializes, prints, reparses: the full text round trip.
Json through_text(const Json& doc) { return gmra::cli::parse_document(doc.dump(2)); }

}  // namespace

TEST(Documents, MultiplicityRoundTrip) {
    const auto mf = journe_multiplicity();
    const auto doc = through_text(gmra::cli::to_json(mf));
    EXPECT_EQ(gmra::cli::kind_of(doc), "multiplicity");
    EXPECT_EQ(doc["origin"], "-1/2");
    EXPECT_EQ(gmra::cli::multiplicity_from_json(doc), mf);
}

TEST(Documents, ExactBankAndMSystemRoundTrip) {
    const auto bank = journe_bank();
    const auto bdoc = through_text(gmra::cli::to_json(bank));
    EXPECT_EQ(gmra::cli::scalar_of(bdoc), "exact");
    EXPECT_FALSE(bdoc["h"].contains("1,2") && bdoc["h"]["1,2"].is_null());
    const auto back = gmra::cli::bank_from_json<ExactComplex>(bdoc);
    EXPECT_EQ(back.h, bank.h);
    EXPECT_EQ(back.g, bank.g);

    const auto m = journe_msystem();
    EXPECT_EQ(gmra::cli::msystem_from_json<ExactComplex>(through_text(gmra::cli::to_json(m))), m);
}

TEST(Documents, FloatMSystemRoundTripIsBitExact) {
    std::mt19937_64 rng(3);
    const auto mf = gmra::testing::random_multiplicity(rng);
    const auto m = gmra::testing::random_msystem(mf, 99);
    const auto doc = through_text(gmra::cli::to_json(m));
    EXPECT_EQ(gmra::cli::scalar_of(doc), "float");
    EXPECT_EQ(gmra::cli::msystem_from_json<Complex>(doc), m);
}

TEST(Documents, LoopAndClassicalAndIndicatorRoundTrip) {
    const auto mf = journe_multiplicity();
    const auto k = random_loop_element(mf, conjugate(mf), 4, 2);
    EXPECT_EQ(gmra::cli::loop_from_json<Complex>(through_text(gmra::cli::to_json(k))), k);

    for (const auto& msys : {haar_msystem(), shannon_msystem()}) {
        const auto back = gmra::cli::classical_from_json(through_text(gmra::cli::to_json(msys)));
        EXPECT_EQ(back.n, msys.n);
        EXPECT_EQ(back.filters, msys.filters);
    }
    const auto w = journe_wavelet();
    EXPECT_EQ(gmra::cli::indicator_from_json(through_text(gmra::cli::to_json(w))), w);
}

TEST(Documents, GridRoundTrip) {
    FrequencyGridFn g{Rational(-1, 3), Rational(1, 6), {Complex(0.25, -1.0), Complex(1e-300, 3.5)}};
    const auto back = gmra::cli::grid_from_json(through_text(gmra::cli::to_json(g)));
    EXPECT_EQ(back.start, g.start);
    EXPECT_EQ(back.step, g.step);
    EXPECT_EQ(back.values, g.values);
}

TEST(Documents, HeaderErrors) {
    EXPECT_THROW(gmra::cli::parse_document("not json"), SchemaError);
    EXPECT_THROW(gmra::cli::parse_document("[1,2]"), SchemaError);
    EXPECT_THROW(gmra::cli::parse_document(R"({"version":1})"), SchemaError);
    EXPECT_THROW(gmra::cli::parse_document(R"({"kind":"bank","version":2})"), SchemaError);
    EXPECT_THROW(gmra::cli::parse_document(R"({"kind":"bank"})"), SchemaError);
    EXPECT_NO_THROW(gmra::cli::parse_document(R"({"kind":"bank","version":1})"));
}

TEST(Documents, BodyErrors) {
    auto doc = gmra::cli::to_json(journe_multiplicity());
    doc["breakpoints"][1] = "1/0";
    EXPECT_THROW(gmra::cli::multiplicity_from_json(doc), SchemaError);

    doc = gmra::cli::to_json(journe_multiplicity());
    doc["values"].erase(0);
    EXPECT_THROW(gmra::cli::multiplicity_from_json(doc), SchemaError);

    doc = gmra::cli::to_json(journe_multiplicity());
    EXPECT_THROW(gmra::cli::bank_from_json<ExactComplex>(doc), SchemaError);

    auto bank = gmra::cli::to_json(journe_bank());
    bank["h"]["1,1"]["values"][0] = Json::array({"1", "x"});
    EXPECT_THROW(gmra::cli::bank_from_json<ExactComplex>(bank), SchemaError);

    bank = gmra::cli::to_json(journe_bank());
    bank["h"]["9,9"] = bank["h"]["1,1"];
    EXPECT_THROW(gmra::cli::bank_from_json<ExactComplex>(bank), SchemaError);

    auto classical = gmra::cli::to_json(haar_msystem());
    classical["filters"][0]["type"] = "spline";
    EXPECT_THROW(gmra::cli::classical_from_json(classical), SchemaError);
}
