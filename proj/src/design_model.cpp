#include "dqa/design_model.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace dqa {

using nlohmann::json;

Visibility visibility_from_string(const std::string& token) {
    if (token == "public") return Visibility::Public;
    if (token == "protected") return Visibility::Protected;
    if (token == "private") return Visibility::Private;
    throw SchemaViolationError("bad visibility token '" + token +
                               "' (expected public|protected|private)");
}

std::string to_string(Visibility v) {
    switch (v) {
        case Visibility::Public: return "public";
        case Visibility::Protected: return "protected";
        case Visibility::Private: return "private";
    }
    return "private";
}

std::string MethodDecl::signature() const {
    std::string sig = name + "(";
    for (size_t i = 0; i < params.size(); ++i) {
        if (i) sig += ",";
        sig += params[i].type_name;
    }
    sig += ")";
    return sig;
}

const ClassDecl* DesignModel::find_class(const std::string& name) const {
    for (const auto& c : classes)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

const json& require_field(const json& obj, const char* key, const std::string& ctx) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw SchemaViolationError("missing required field '" + std::string(key) + "' in " + ctx);
    return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& ctx) {
    const json& v = require_field(obj, key, ctx);
    if (!v.is_string())
        throw SchemaViolationError("field '" + std::string(key) + "' in " + ctx +
                                   " must be a string");
    return v.get<std::string>();
}

ClassDecl parse_class(const json& jc) {
    if (!jc.is_object()) throw SchemaViolationError("class entry must be an object");
    ClassDecl c;
    c.name = require_string(jc, "name", "class");
    const std::string ctx = "class '" + c.name + "'";

    if (auto it = jc.find("parents"); it != jc.end()) {
        if (!it->is_array()) throw SchemaViolationError("'parents' of " + ctx + " must be an array");
        for (const auto& p : *it) {
            if (!p.is_string())
                throw SchemaViolationError("parent names of " + ctx + " must be strings");
            c.parents.push_back(p.get<std::string>());
        }
    }

    const json& attrs = require_field(jc, "attributes", ctx);
    if (!attrs.is_array()) throw SchemaViolationError("'attributes' of " + ctx + " must be an array");
    for (const auto& ja : attrs) {
        AttributeDecl a;
        a.name = require_string(ja, "name", "attribute of " + ctx);
        a.type_name = require_string(ja, "type", "attribute of " + ctx);
        a.visibility = visibility_from_string(require_string(ja, "visibility", "attribute of " + ctx));
        c.attributes.push_back(std::move(a));
    }

    const json& methods = require_field(jc, "methods", ctx);
    if (!methods.is_array()) throw SchemaViolationError("'methods' of " + ctx + " must be an array");
    for (const auto& jm : methods) {
        MethodDecl m;
        m.name = require_string(jm, "name", "method of " + ctx);
        m.visibility = visibility_from_string(require_string(jm, "visibility", "method of " + ctx));
        const json& params = require_field(jm, "params", "method '" + m.name + "' of " + ctx);
        if (!params.is_array())
            throw SchemaViolationError("'params' of method '" + m.name + "' must be an array");
        for (const auto& jp : params) {
            ParamDecl p;
            p.name = require_string(jp, "name", "param of method '" + m.name + "'");
            p.type_name = require_string(jp, "type", "param of method '" + m.name + "'");
            m.params.push_back(std::move(p));
        }
        c.methods.push_back(std::move(m));
    }
    return c;
}

}  // namespace

DesignModel parse_design_model(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw MalformedDocumentError(origin + ": " + e.what());
    }
    if (!doc.is_object()) throw SchemaViolationError(origin + ": top level must be an object");

    DesignModel m;
    m.project_name = require_string(doc, "project", "top level of " + origin);
    const json& classes = require_field(doc, "classes", "top level of " + origin);
    if (!classes.is_array())
        throw SchemaViolationError(origin + ": 'classes' must be an array");
    for (const auto& jc : classes) m.classes.push_back(parse_class(jc));
    return m;
}

DesignModel load_design_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFoundError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_design_model(buf.str(), path);
}

std::string serialize_design_model(const DesignModel& m) {
    json doc;
    doc["project"] = m.project_name;
    doc["classes"] = json::array();
    for (const auto& c : m.classes) {
        json jc;
        jc["name"] = c.name;
        if (!c.parents.empty()) jc["parents"] = c.parents;
        jc["attributes"] = json::array();
        for (const auto& a : c.attributes)
            jc["attributes"].push_back(
                {{"name", a.name}, {"type", a.type_name}, {"visibility", to_string(a.visibility)}});
        jc["methods"] = json::array();
        for (const auto& mm : c.methods) {
            json jm;
            jm["name"] = mm.name;
            jm["visibility"] = to_string(mm.visibility);
            jm["params"] = json::array();
            for (const auto& p : mm.params)
                jm["params"].push_back({{"name", p.name}, {"type", p.type_name}});
            jc["methods"].push_back(std::move(jm));
        }
        doc["classes"].push_back(std::move(jc));
    }
    return doc.dump(2) + "\n";
}

ValidationReport validate_model(const DesignModel& m) {
    ValidationReport report;
    auto add = [&](Violation::Kind k, std::string msg) {
        report.violations.push_back({k, std::move(msg)});
    };

    std::set<std::string> class_names;
    for (const auto& c : m.classes) {
        if (!class_names.insert(c.name).second)
            add(Violation::Kind::DuplicateClass, "duplicate class name '" + c.name + "'");
    }

    for (const auto& c : m.classes) {
        std::set<std::string> attr_names;
        for (const auto& a : c.attributes)
            if (!attr_names.insert(a.name).second)
                add(Violation::Kind::DuplicateAttribute,
                    "duplicate attribute '" + a.name + "' in class '" + c.name + "'");

        std::set<std::string> sigs;
        for (const auto& mm : c.methods) {
            if (!sigs.insert(mm.signature()).second)
                add(Violation::Kind::DuplicateMethod,
                    "duplicate method signature '" + mm.signature() + "' in class '" + c.name + "'");
            std::set<std::string> param_names;
            for (const auto& p : mm.params)
                if (!param_names.insert(p.name).second)
                    add(Violation::Kind::DuplicateParam,
                        "duplicate parameter '" + p.name + "' in method '" + mm.name +
                            "' of class '" + c.name + "'");
        }

        for (const auto& p : c.parents)
            if (!class_names.count(p))
                add(Violation::Kind::UnknownParent,
                    "class '" + c.name + "' names unknown parent '" + p + "'");
    }

    // Cycle detection over the subgraph of known parents.
    enum class Mark { White, Grey, Black };
    std::map<std::string, Mark> mark;
    for (const auto& c : m.classes) mark[c.name] = Mark::White;

    std::set<std::set<std::string>> reported_cycles;
    std::vector<std::string> stack;
    std::function<void(const std::string&)> visit = [&](const std::string& name) {
        mark[name] = Mark::Grey;
        stack.push_back(name);
        const ClassDecl* c = m.find_class(name);
        for (const auto& p : c->parents) {
            auto it = mark.find(p);
            if (it == mark.end()) continue;
            if (it->second == Mark::Grey) {
                auto from = std::find(stack.begin(), stack.end(), p);
                std::set<std::string> members(from, stack.end());
                if (reported_cycles.insert(members).second) {
                    std::string msg = "inheritance cycle:";
                    for (auto jt = from; jt != stack.end(); ++jt) msg += " " + *jt;
                    add(Violation::Kind::InheritanceCycle, msg);
                }
            } else if (it->second == Mark::White) {
                visit(p);
            }
        }
        stack.pop_back();
        mark[name] = Mark::Black;
    };
    for (const auto& c : m.classes)
        if (mark[c.name] == Mark::White) visit(c.name);

    return report;
}

ResolvedHierarchy resolve_hierarchy(const DesignModel& m) {
    ValidationReport report = validate_model(m);
    for (const auto& v : report.violations)
        if (v.kind == Violation::Kind::InheritanceCycle)
            throw CycleDetectedError(v.message);
    if (!report.clean())
        throw CycleDetectedError("model fails validation: " + report.violations.front().message);

    ResolvedHierarchy h;
    std::function<const ResolvedClass&(const std::string&)> resolve =
        [&](const std::string& name) -> const ResolvedClass& {
        auto it = h.find(name);
        if (it != h.end()) return it->second;

        const ClassDecl* c = m.find_class(name);
        ResolvedClass rc;
        for (const auto& mm : c->methods) rc.local_methods.insert(mm.signature());
        for (const auto& pname : c->parents) {
            const ResolvedClass& parent = resolve(pname);
            rc.ancestors.insert(pname);
            rc.ancestors.insert(parent.ancestors.begin(), parent.ancestors.end());
            for (const auto& sig : parent.local_methods) rc.inherited_methods.insert(sig);
            for (const auto& sig : parent.inherited_methods) rc.inherited_methods.insert(sig);
        }
        // Local declarations shadow inherited signatures.
        for (const auto& sig : rc.local_methods) rc.inherited_methods.erase(sig);
        return h.emplace(name, std::move(rc)).first->second;
    };
    for (const auto& c : m.classes) resolve(c.name);
    return h;
}

}  // namespace dqa
