#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dqa/errors.hpp"

namespace dqa {

enum class Visibility { Public, Protected, Private };

Visibility visibility_from_string(const std::string& token);
std::string to_string(Visibility v);

struct ParamDecl {
    std::string name;
    std::string type_name;

    bool operator==(const ParamDecl&) const = default;
};

struct AttributeDecl {
    std::string name;
    std::string type_name;
    Visibility visibility = Visibility::Private;

    bool operator==(const AttributeDecl&) const = default;
};

struct MethodDecl {
    std::string name;
    Visibility visibility = Visibility::Public;
    std::vector<ParamDecl> params;

    // Identity used for overload and override resolution: name + parameter types.
    std::string signature() const;

    bool operator==(const MethodDecl&) const = default;
};

struct ClassDecl {
    std::string name;
    std::vector<std::string> parents;
    std::vector<AttributeDecl> attributes;
    std::vector<MethodDecl> methods;

    bool operator==(const ClassDecl&) const = default;
};

/// Language-neutral class model for one project. Immutable after load.
struct DesignModel {
    std::string project_name;
    std::vector<ClassDecl> classes;

    const ClassDecl* find_class(const std::string& name) const;

    bool operator==(const DesignModel&) const = default;
};

struct Violation {
    enum class Kind {
        DuplicateClass,
        DuplicateAttribute,
        DuplicateMethod,
        DuplicateParam,
        UnknownParent,
        InheritanceCycle,
    };
    Kind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool clean() const { return violations.empty(); }
};

/// Per-class resolution of the inheritance graph.
struct ResolvedClass {
    std::set<std::string> ancestors;           // transitive, never contains the class itself
    std::set<std::string> inherited_methods;   // ancestor signatures minus local overrides
    std::set<std::string> local_methods;       // signatures declared in the class
};

using ResolvedHierarchy = std::map<std::string, ResolvedClass>;

DesignModel load_design_model(const std::string& path);
DesignModel parse_design_model(const std::string& text, const std::string& origin = "<string>");
std::string serialize_design_model(const DesignModel& m);

ValidationReport validate_model(const DesignModel& m);

// Requires validate_model(m).clean(); throws CycleDetectedError otherwise.
ResolvedHierarchy resolve_hierarchy(const DesignModel& m);

}  // namespace dqa
