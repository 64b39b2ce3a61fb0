#include "homoscope/model.hpp"

#include "json.hpp"

#include <fstream>
#include <stdexcept>

namespace homoscope {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("model file: " + what);
}

}  // namespace

ModelInstance parse_model_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("parse failure: ") + e.what());
    }
    if (!doc.contains("H")) fail("missing field \"H\"");
    if (!doc.contains("lambda")) fail("missing field \"lambda\"");
    if (!doc.contains("G")) fail("missing field \"G\"");

    const auto& hj = doc["H"];
    if (!hj.contains("q") || !hj["q"].is_number_integer()) fail("H.q must be an integer");
    int q = hj["q"].get<int>();
    std::vector<std::pair<int, int>> hedges;
    for (const auto& e : hj.value("edges", json::array())) {
        if (!e.is_array() || e.size() != 2) fail("H.edges entries must be [i,j]");
        hedges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    ConstraintGraph h(q, hedges);

    std::vector<Rational> w;
    for (const auto& s : doc["lambda"]) {
        Rational r = s.is_string() ? parse_rational(s.get<std::string>())
                                   : Rational(s.get<long long>());
        if (r <= 0) fail("lambda entries must be positive");
        w.push_back(r);
    }
    WeightSystem lambda{std::move(w)};
    lambda.validate_for(h);

    const auto& gj = doc["G"];
    BipartiteHostGraph g;
    g.class_E = gj.value("E", 0);
    g.class_O = gj.value("O", 0);
    g.simple_flag = gj.value("simple", true);
    for (const auto& e : gj.value("edges", json::array())) {
        if (!e.is_array() || e.size() != 2) fail("G.edges entries must be [e,o]");
        g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    g.validate();

    return ModelInstance{std::move(h), std::move(lambda), std::move(g)};
}

std::string model_to_json(const ModelInstance& m) {
    json doc;
    doc["H"]["q"] = m.h.colour_count();
    auto& he = doc["H"]["edges"] = json::array();
    for (auto [i, j] : m.h.edge_list()) he.push_back({i, j});
    auto& lj = doc["lambda"] = json::array();
    for (const auto& w : m.lambda.weights) lj.push_back(rational_to_string(w));
    doc["G"]["E"] = m.g.class_E;
    doc["G"]["O"] = m.g.class_O;
    doc["G"]["simple"] = m.g.simple_flag;
    auto& ge = doc["G"]["edges"] = json::array();
    for (auto [e, o] : m.g.edges) ge.push_back({e, o});
    return doc.dump(2);
}

ModelInstance load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_model_json(text);
}

void save_model(const ModelInstance& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << model_to_json(m) << "\n";
}

}  // namespace homoscope
