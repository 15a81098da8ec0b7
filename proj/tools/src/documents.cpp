#include "gmra/cli/documents.hpp"

#include <algorithm>
#include <array>
#include <charconv>

namespace gmra::cli {

namespace {

constexpr std::array<std::string_view, 8> kKinds{"multiplicity",  "bank",     "msystem", "loop-element",
                                                 "classical-msystem", "grid-function", "report", "indicator"};

[[noreturn]] void fail(const std::string& what) { throw SchemaError(what); }

const Json& field(const Json& doc, const char* name) {
    if (!doc.is_object() || !doc.contains(name)) {
        fail(std::string("missing field \"") + name + "\"");
    }
    return doc.at(name);
}

Rational rational_from(const Json& j, const std::string& where) {
    try {
        if (j.is_string()) {
            return Rational::parse(j.get<std::string>());
        }
        if (j.is_number_integer()) {
            return Rational(j.get<long>());
        }
    } catch (const std::invalid_argument& e) {
        fail(where + ": " + e.what());
    }
    fail(where + ": expected a rational \"p/q\"");
}

Json rational_to(const Rational& r) { return r.str(); }

int int_from(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) {
        fail(where + ": expected an integer");
    }
    return j.get<int>();
}

template <FilterScalar S>
S scalar_from(const Json& j, const std::string& where) {
    if constexpr (ScalarTraits<S>::exact) {
        if (j.is_array() && j.size() == 2) {
            return ExactComplex(rational_from(j[0], where), rational_from(j[1], where));
        }
        return ExactComplex(rational_from(j, where));
    } else {
        if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
            return Complex(j[0].get<double>(), j[1].get<double>());
        }
        if (j.is_number()) {
            return Complex(j.get<double>(), 0.0);
        }
        fail(where + ": expected [re, im]");
    }
}

template <FilterScalar S>
Json scalar_to(const S& v) {
    if constexpr (ScalarTraits<S>::exact) {
        return Json::array({v.re.str(), v.im.str()});
    } else {
        return Json::array({v.real(), v.imag()});
    }
}

Partition partition_from(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) {
        fail(where + ": breakpoints must be a nonempty array");
    }
    std::vector<Rational> bps;
    for (const auto& b : j) {
        bps.push_back(rational_from(b, where));
    }
    try {
        return Partition(std::move(bps));
    } catch (const std::invalid_argument& e) {
        fail(where + ": " + e.what());
    }
}

Json partition_to(const Partition& p) {
    Json out = Json::array();
    for (const auto& b : p.breakpoints()) {
        out.push_back(rational_to(b));
    }
    return out;
}

template <class V, class F>
PiecewiseFn<V> fn_from(const Json& j, const std::string& where, F&& value) {
    Partition part = partition_from(field(j, "breakpoints"), where);
    const Json& vals = field(j, "values");
    if (!vals.is_array() || vals.size() != part.size()) {
        fail(where + ": need one value per breakpoint");
    }
    std::vector<V> out;
    for (const auto& v : vals) {
        out.push_back(value(v));
    }
    return PiecewiseFn<V>(std::move(part), std::move(out));
}

template <FilterScalar S>
Filter<S> filter_from(const Json& j, const std::string& where) {
    return fn_from<S>(j, where, [&](const Json& v) { return scalar_from<S>(v, where); });
}

template <FilterScalar S>
Json filter_to(const Filter<S>& f) {
    Json vals = Json::array();
    for (const auto& v : f.values()) {
        vals.push_back(scalar_to(v));
    }
    return Json{{"breakpoints", partition_to(f.partition())}, {"values", std::move(vals)}};
}

Json multiplicity_body(const MultiplicityFunction& mf) {
    Json vals = Json::array();
    for (int v : mf.function().values()) {
        vals.push_back(v);
    }
    return Json{{"N", mf.dilation()},
                {"origin", rational_to(mf.origin())},
                {"breakpoints", partition_to(mf.function().partition())},
                {"values", std::move(vals)}};
}

std::pair<std::size_t, std::size_t> index_pair(const std::string& key, std::size_t rows, std::size_t cols,
                                               const std::string& where) {
    const auto comma = key.find(',');
    int i = 0;
    int j = 0;
    const bool ok = comma != std::string::npos &&
                    std::from_chars(key.data(), key.data() + comma, i).ec == std::errc{} &&
                    std::from_chars(key.data() + comma + 1, key.data() + key.size(), j).ec == std::errc{};
    if (!ok || i < 1 || j < 1 || static_cast<std::size_t>(i) > rows || static_cast<std::size_t>(j) > cols) {
        fail(where + ": bad index \"" + key + "\"");
    }
    return {static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)};
}

template <FilterScalar S>
void read_indexed(const Json& doc, const char* name, std::vector<std::vector<Filter<S>>>& target) {
    if (!doc.contains(name)) {
        return;
    }
    const Json& table = doc.at(name);
    if (!table.is_object()) {
        fail(std::string(name) + ": expected an object keyed \"i,j\"");
    }
    const std::size_t cols = target.empty() ? 0 : target.front().size();
    for (const auto& [key, value] : table.items()) {
        const auto [i, j] = index_pair(key, target.size(), cols, name);
        target[i][j] = filter_from<S>(value, std::string(name) + "[" + key + "]");
    }
}

template <FilterScalar S>
Json write_indexed(const std::vector<std::vector<Filter<S>>>& table) {
    Json out = Json::object();
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (std::size_t j = 0; j < table[i].size(); ++j) {
            const auto& f = table[i][j];
            const bool zero = std::all_of(f.values().begin(), f.values().end(),
                                          [](const S& v) { return ScalarTraits<S>::is_zero(v); });
            if (!zero) {
                out[std::to_string(i + 1) + "," + std::to_string(j + 1)] = filter_to(f);
            }
        }
    }
    return out;
}

void require_kind(const Json& doc, std::string_view kind) {
    if (kind_of(doc) != kind) {
        fail("expected a \"" + std::string(kind) + "\" document, got \"" + kind_of(doc) + "\"");
    }
}

template <FilterScalar S>
void require_scalar(const Json& doc) {
    if (scalar_of(doc) != ScalarTraits<S>::name) {
        fail("expected scalar \"" + std::string(ScalarTraits<S>::name) + "\"");
    }
}

template <FilterScalar S>
Json scalar_header(std::string_view kind) {
    Json out = header(kind);
    out["scalar"] = ScalarTraits<S>::name;
    return out;
}

/// Library constructors validate with std::invalid_argument; inside a
/// document those are schema problems.
template <class F>
auto guarded(const std::string& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SchemaError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(where + ": " + e.what());
    }
}

}  // namespace

Json parse_document(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        fail("document must be a JSON object");
    }
    const std::string kind = kind_of(doc);
    if (std::find(kKinds.begin(), kKinds.end(), kind) == kKinds.end()) {
        fail("unknown document kind \"" + kind + "\"");
    }
    if (!doc.contains("version") || !doc.at("version").is_number_integer() ||
        doc.at("version").get<int>() != kDocumentVersion) {
        fail("unsupported or missing document version (expected " + std::to_string(kDocumentVersion) + ")");
    }
    return doc;
}

Json header(std::string_view kind) { return Json{{"kind", std::string(kind)}, {"version", kDocumentVersion}}; }

std::string kind_of(const Json& doc) {
    const Json& k = field(doc, "kind");
    if (!k.is_string()) {
        fail("\"kind\" must be a string");
    }
    return k.get<std::string>();
}

std::string scalar_of(const Json& doc) {
    if (!doc.contains("scalar")) {
        return "exact";
    }
    const Json& s = doc.at("scalar");
    if (!s.is_string() || (s != "exact" && s != "float")) {
        fail("\"scalar\" must be \"exact\" or \"float\"");
    }
    return s.get<std::string>();
}

Json to_json(const MultiplicityFunction& mf) {
    Json out = header("multiplicity");
    out.update(multiplicity_body(mf));
    return out;
}

MultiplicityFunction multiplicity_from_json(const Json& doc) {
    if (doc.contains("kind")) {
        require_kind(doc, "multiplicity");
    }
    const int n = int_from(field(doc, "N"), "N");
    const Rational origin = doc.contains("origin") ? rational_from(doc.at("origin"), "origin") : Rational(-1, 2);
    auto mu = fn_from<int>(doc, "multiplicity", [](const Json& v) { return int_from(v, "multiplicity value"); });
    return guarded("multiplicity", [&] { return MultiplicityFunction(std::move(mu), n, origin); });
}

template <FilterScalar S>
Json to_json(const GeneralizedFilterBank<S>& bank) {
    Json out = scalar_header<S>("bank");
    out["multiplicity"] = multiplicity_body(bank.mf);
    out["h"] = write_indexed(bank.h);
    out["g"] = write_indexed(bank.g);
    return out;
}

template <FilterScalar S>
GeneralizedFilterBank<S> bank_from_json(const Json& doc) {
    require_kind(doc, "bank");
    require_scalar<S>(doc);
    auto bank = GeneralizedFilterBank<S>::zeros(multiplicity_from_json(field(doc, "multiplicity")));
    read_indexed<S>(doc, "h", bank.h);
    read_indexed<S>(doc, "g", bank.g);
    return bank;
}

template <FilterScalar S>
Json to_json(const MSystem<S>& m) {
    Json out = scalar_header<S>("msystem");
    out["multiplicity"] = multiplicity_body(m.mf());
    out["components"] = write_indexed(m.components());
    return out;
}

template <FilterScalar S>
MSystem<S> msystem_from_json(const Json& doc) {
    require_kind(doc, "msystem");
    require_scalar<S>(doc);
    auto mf = multiplicity_from_json(field(doc, "multiplicity"));
    auto cm = conjugate(mf);
    std::vector<std::vector<Filter<S>>> comps(static_cast<std::size_t>(mf.c() + cm.d),
                                              std::vector<Filter<S>>(static_cast<std::size_t>(mf.c()),
                                                                     Filter<S>::constant(ScalarTraits<S>::zero())));
    read_indexed<S>(doc, "components", comps);
    return guarded("msystem", [&] { return MSystem<S>(mf, cm, std::move(comps)); });
}

template <FilterScalar S>
Json matrix_to_json(const Matrix<S>& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(scalar_to(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

template <FilterScalar S>
Json to_json(const LoopElement<S>& k) {
    Json out = scalar_header<S>("loop-element");
    out["multiplicity"] = multiplicity_body(k.mf());
    out["breakpoints"] = partition_to(k.section().partition());
    Json mats = Json::array();
    for (const auto& m : k.section().values()) {
        mats.push_back(matrix_to_json(m));
    }
    out["matrices"] = std::move(mats);
    return out;
}

template <FilterScalar S>
LoopElement<S> loop_from_json(const Json& doc) {
    require_kind(doc, "loop-element");
    require_scalar<S>(doc);
    auto mf = multiplicity_from_json(field(doc, "multiplicity"));
    auto cm = conjugate(mf);
    Partition part = partition_from(field(doc, "breakpoints"), "loop-element");
    const Json& mats = field(doc, "matrices");
    if (!mats.is_array() || mats.size() != part.size()) {
        fail("loop-element: need one matrix per breakpoint");
    }
    std::vector<Matrix<S>> values;
    for (const auto& m : mats) {
        if (!m.is_array()) {
            fail("loop-element: matrix must be an array of rows");
        }
        const std::size_t n = m.size();
        Matrix<S> mat(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            if (!m[r].is_array() || m[r].size() != n) {
                fail("loop-element: matrices must be square");
            }
            for (std::size_t c = 0; c < n; ++c) {
                mat(r, c) = scalar_from<S>(m[r][c], "loop-element entry");
            }
        }
        values.push_back(std::move(mat));
    }
    return guarded("loop-element", [&] {
        return LoopElement<S>(mf, cm, PiecewiseFn<Matrix<S>>(std::move(part), std::move(values)));
    });
}

Json to_json(const ClassicalMSystem& msys) {
    Json out = header("classical-msystem");
    out["N"] = msys.n;
    Json filters = Json::array();
    for (const auto& f : msys.filters) {
        if (f.is_piecewise()) {
            Json entry{{"type", "piecewise"}};
            entry.update(filter_to(f.piecewise()));
            filters.push_back(std::move(entry));
        } else {
            Json coeffs = Json::object();
            for (const auto& [v, a] : f.trig().coefficients()) {
                coeffs[std::to_string(v)] = scalar_to(a);
            }
            filters.push_back(Json{{"type", "trig"}, {"coefficients", std::move(coeffs)}});
        }
    }
    out["filters"] = std::move(filters);
    return out;
}

ClassicalMSystem classical_from_json(const Json& doc) {
    require_kind(doc, "classical-msystem");
    ClassicalMSystem msys;
    msys.n = int_from(field(doc, "N"), "N");
    if (msys.n < 2) {
        fail("classical-msystem: N must be at least 2");
    }
    const Json& filters = field(doc, "filters");
    if (!filters.is_array() || filters.empty()) {
        fail("classical-msystem: filters must be a nonempty array");
    }
    for (const auto& f : filters) {
        const Json& type = field(f, "type");
        if (type == "piecewise") {
            msys.filters.emplace_back(filter_from<ExactComplex>(f, "piecewise filter"));
        } else if (type == "trig") {
            std::map<int, Complex> coeffs;
            for (const auto& [key, value] : field(f, "coefficients").items()) {
                int v = 0;
                if (std::from_chars(key.data(), key.data() + key.size(), v).ec != std::errc{}) {
                    fail("trig filter: bad frequency \"" + key + "\"");
                }
                coeffs[v] = scalar_from<Complex>(value, "trig coefficient");
            }
            msys.filters.emplace_back(TrigPolynomial(std::move(coeffs)));
        } else {
            fail("classical-msystem: filter type must be \"trig\" or \"piecewise\"");
        }
    }
    return msys;
}

Json to_json(const FrequencyGridFn& g) {
    Json out = header("grid-function");
    out["scalar"] = "float";
    out["start"] = rational_to(g.start);
    out["step"] = rational_to(g.step);
    Json vals = Json::array();
    for (const auto& v : g.values) {
        vals.push_back(scalar_to(v));
    }
    out["values"] = std::move(vals);
    return out;
}

FrequencyGridFn grid_from_json(const Json& doc) {
    require_kind(doc, "grid-function");
    FrequencyGridFn g;
    g.start = rational_from(field(doc, "start"), "start");
    g.step = rational_from(field(doc, "step"), "step");
    if (g.step.sign() <= 0) {
        fail("grid-function: step must be positive");
    }
    const Json& vals = field(doc, "values");
    if (!vals.is_array()) {
        fail("grid-function: values must be an array");
    }
    for (const auto& v : vals) {
        g.values.push_back(scalar_from<Complex>(v, "grid value"));
    }
    return g;
}

Json to_json(const IndicatorWavelet& w) {
    Json out = header("indicator");
    Json ivs = Json::array();
    for (const auto& [lo, hi] : w.intervals()) {
        ivs.push_back(Json::array({rational_to(lo), rational_to(hi)}));
    }
    out["intervals"] = std::move(ivs);
    return out;
}

IndicatorWavelet indicator_from_json(const Json& doc) {
    require_kind(doc, "indicator");
    const Json& ivs = field(doc, "intervals");
    if (!ivs.is_array()) {
        fail("indicator: intervals must be an array");
    }
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& iv : ivs) {
        if (!iv.is_array() || iv.size() != 2) {
            fail("indicator: each interval is [lo, hi]");
        }
        out.emplace_back(rational_from(iv[0], "interval"), rational_from(iv[1], "interval"));
    }
    return guarded("indicator", [&] { return IndicatorWavelet(std::move(out)); });
}

Json to_json(const Cell& c) { return c.str(); }

Json to_json(const Verdict& v) {
    Json out{{"name", v.name}, {"pass", v.pass}, {"worst_residual", v.worst_residual}};
    out["worst_cell"] = v.worst_cell ? Json(v.worst_cell->str()) : Json(nullptr);
    if (!v.detail.empty()) {
        out["detail"] = v.detail;
    }
    return out;
}

#define GMRA_INSTANTIATE_DOCS(S)                                      \
    template Json to_json(const GeneralizedFilterBank<S>&);           \
    template GeneralizedFilterBank<S> bank_from_json<S>(const Json&); \
    template Json to_json(const MSystem<S>&);                         \
    template MSystem<S> msystem_from_json<S>(const Json&);            \
    template Json to_json(const LoopElement<S>&);                     \
    template LoopElement<S> loop_from_json<S>(const Json&);           \
    template Json matrix_to_json(const Matrix<S>&);

GMRA_INSTANTIATE_DOCS(Complex)
GMRA_INSTANTIATE_DOCS(ExactComplex)

#undef GMRA_INSTANTIATE_DOCS

}  // namespace gmra::cli
