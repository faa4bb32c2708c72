#include "nfs/serialization.hpp"

#include "nfs/errors.hpp"

#include <fstream>

namespace nfs {

using nlohmann::json;

namespace {

const json& member(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(path + "/" + key, "missing required field");
    return *it;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    return j.get<double>();
}

std::string string_of(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

const json& array_of(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    return j;
}

std::vector<double> numbers(const json& j, const std::string& path) {
    std::vector<double> out;
    for (std::size_t i = 0; i < array_of(j, path).size(); ++i)
        out.push_back(number(j[i], path + "/" + std::to_string(i)));
    return out;
}

json triangle_json(const Triangular& t) { return {{"a", t.a}, {"b", t.b}, {"c", t.c}}; }

json consequence_json(const Consequence& c) {
    if (const auto* ma = std::get_if<MamdaniConsequence>(&c)) return {{"triangle", triangle_json(ma->triangle)}};
    if (const auto* tsk = std::get_if<TskConsequence>(&c))
        return {{"weights", tsk->weights}, {"constant", tsk->constant}};
    const auto& ann = std::get<AnnbfisConsequence>(c);
    return {{"width", ann.width}, {"weights", ann.weights}, {"constant", ann.constant}};
}

Consequence consequence_from_json(const json& j, SystemKind kind, const std::string& path) {
    switch (kind) {
        case SystemKind::Mamdani: {
            const auto tp = path + "/triangle";
            const auto& t = member(j, "triangle", path);
            return MamdaniConsequence{Triangular{number(member(t, "a", tp), tp + "/a"),
                                                 number(member(t, "b", tp), tp + "/b"),
                                                 number(member(t, "c", tp), tp + "/c")}};
        }
        case SystemKind::Tsk:
            return TskConsequence{numbers(member(j, "weights", path), path + "/weights"),
                                  number(member(j, "constant", path), path + "/constant")};
        case SystemKind::Annbfis:
            return AnnbfisConsequence{number(member(j, "width", path), path + "/width"),
                                      numbers(member(j, "weights", path), path + "/weights"),
                                      number(member(j, "constant", path), path + "/constant")};
    }
    throw SchemaError(path, "unknown system kind");
}

}  // namespace

json to_json(const MembershipFunction& f) {
    json params = json::object();
    const auto names = parameter_names(f.kind());
    const auto values = f.parameters();
    for (std::size_t i = 0; i < names.size(); ++i) params[std::string(names[i])] = values[i];
    return {{"kind", std::string(kind_name(f.kind()))}, {"params", params}};
}

MembershipFunction membership_from_json(const json& j, const std::string& path) {
    const auto name = string_of(member(j, "kind", path), path + "/kind");
    const auto kind = parse_kind_name(name);
    if (!kind) throw SchemaError(path + "/kind", "unknown membership kind '" + name + "'");

    const auto pp = path + "/params";
    const auto& params = member(j, "params", path);
    std::vector<double> values;
    for (auto pname : parameter_names(*kind)) {
        const std::string key(pname);
        values.push_back(number(member(params, key, pp), pp + "/" + key));
    }
    try {
        return MembershipFunction::from_parameters(*kind, values);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(pp, e.what());
    }
}

json to_json(const RuleBase& rb) {
    json rules = json::array();
    for (const auto& rule : rb.rules()) {
        json premise = json::array();
        for (const auto& clause : rule.premise.clauses)
            premise.push_back({{"attr", clause.attribute}, {"mf", to_json(clause.descriptor)}});
        rules.push_back({{"premise", premise}, {"consequence", consequence_json(rule.consequence)}});
    }
    return {{"kind", std::string(system_kind_name(rb.kind()))},
            {"inputs", rb.input_names()},
            {"output", rb.output_name()},
            {"rules", rules}};
}

RuleBase rulebase_from_json(const json& j) {
    const auto kind_str = string_of(member(j, "kind", ""), "/kind");
    const auto kind = parse_system_kind(kind_str);
    if (!kind) throw SchemaError("/kind", "unknown system kind '" + kind_str + "'");

    std::vector<std::string> inputs;
    const auto& jin = array_of(member(j, "inputs", ""), "/inputs");
    for (std::size_t i = 0; i < jin.size(); ++i) inputs.push_back(string_of(jin[i], "/inputs/" + std::to_string(i)));

    std::string output = "output";
    if (j.contains("output")) output = string_of(j["output"], "/output");

    std::vector<Rule> rules;
    const auto& jrules = array_of(member(j, "rules", ""), "/rules");
    for (std::size_t r = 0; r < jrules.size(); ++r) {
        const auto rp = "/rules/" + std::to_string(r);
        const auto& jprem = array_of(member(jrules[r], "premise", rp), rp + "/premise");
        Premise premise;
        for (std::size_t k = 0; k < jprem.size(); ++k) {
            const auto cp = rp + "/premise/" + std::to_string(k);
            const auto& attr = member(jprem[k], "attr", cp);
            if (!attr.is_number_unsigned()) throw SchemaError(cp + "/attr", "expected a non-negative integer");
            premise.clauses.push_back(
                {attr.get<std::size_t>(), membership_from_json(member(jprem[k], "mf", cp), cp + "/mf")});
        }
        rules.push_back({std::move(premise),
                         consequence_from_json(member(jrules[r], "consequence", rp), *kind, rp + "/consequence")});
    }
    try {
        return RuleBase(*kind, std::move(inputs), std::move(output), std::move(rules));
    } catch (const std::invalid_argument& e) {
        throw SchemaError("/rules", e.what());
    }
}

RuleBase load_rulebase(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SchemaError("/", std::string("invalid JSON: ") + e.what());
    }
    return rulebase_from_json(j);
}

void save_rulebase(const RuleBase& rb, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << to_json(rb).dump(2) << '\n';
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace nfs
