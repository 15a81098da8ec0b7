#pragma once

// JSON documents for every artifact the tool reads or writes. Exact
// scalars are ["p/q", "p/q"] pairs; float scalars are [re, im] numbers.
// Breakpoints and other rationals are "p/q" strings.

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gmra/gmra.hpp"

namespace gmra::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kDocumentVersion = 1;

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses text; throws SchemaError on malformed JSON or a missing or
/// unsupported kind/version.
Json parse_document(std::string_view text);

Json header(std::string_view kind);
std::string kind_of(const Json& doc);
/// "exact" or "float".
std::string scalar_of(const Json& doc);

Json to_json(const MultiplicityFunction& mf);
MultiplicityFunction multiplicity_from_json(const Json& doc);

template <FilterScalar S>
Json to_json(const GeneralizedFilterBank<S>& bank);
template <FilterScalar S>
GeneralizedFilterBank<S> bank_from_json(const Json& doc);

template <FilterScalar S>
Json to_json(const MSystem<S>& m);
template <FilterScalar S>
MSystem<S> msystem_from_json(const Json& doc);

template <FilterScalar S>
Json to_json(const LoopElement<S>& k);
template <FilterScalar S>
LoopElement<S> loop_from_json(const Json& doc);

template <FilterScalar S>
Json matrix_to_json(const Matrix<S>& m);

Json to_json(const ClassicalMSystem& msys);
ClassicalMSystem classical_from_json(const Json& doc);

Json to_json(const FrequencyGridFn& g);
FrequencyGridFn grid_from_json(const Json& doc);

Json to_json(const IndicatorWavelet& w);
IndicatorWavelet indicator_from_json(const Json& doc);

Json to_json(const Verdict& v);
Json to_json(const Cell& c);

}  // namespace gmra::cli
