#include "dqa/metrics.hpp"

#include <set>
#include <sstream>

#include "dqa/format.hpp"

namespace dqa {

double encapsulation_metric(const ClassDecl& c) {
    if (c.attributes.empty()) return 0.0;
    size_t hidden = 0;
    for (const auto& a : c.attributes)
        if (a.visibility != Visibility::Public) ++hidden;
    return static_cast<double>(hidden) / static_cast<double>(c.attributes.size());
}

double inheritance_metric(const ClassDecl& c, const ResolvedHierarchy& h) {
    auto it = h.find(c.name);
    if (it == h.end()) return 0.0;
    const size_t inherited = it->second.inherited_methods.size();
    const size_t local = it->second.local_methods.size();
    if (inherited + local == 0) return 0.0;
    return static_cast<double>(inherited) / static_cast<double>(inherited + local);
}

double coupling_metric(const ClassDecl& c, const DesignModel& m) {
    std::set<std::string> referenced;
    auto consider = [&](const std::string& type_name) {
        if (type_name == c.name) return;
        if (m.find_class(type_name) != nullptr) referenced.insert(type_name);
    };
    for (const auto& a : c.attributes) consider(a.type_name);
    for (const auto& mm : c.methods)
        for (const auto& p : mm.params) consider(p.type_name);
    return static_cast<double>(referenced.size());
}

double cohesion_metric(const ClassDecl& c, const DesignModel&) {
    if (c.methods.empty()) return 0.0;

    std::set<std::string> all_types;
    std::vector<std::set<std::string>> per_method;
    per_method.reserve(c.methods.size());
    for (const auto& mm : c.methods) {
        std::set<std::string> types;
        for (const auto& p : mm.params) types.insert(p.type_name);
        all_types.insert(types.begin(), types.end());
        per_method.push_back(std::move(types));
    }
    if (all_types.empty()) return 1.0;  // methods exist, none take parameters

    double overlap = 0.0;
    for (const auto& types : per_method)
        overlap += static_cast<double>(types.size());  // types ⊆ all_types, so |∩| = |types|
    return overlap /
           (static_cast<double>(c.methods.size()) * static_cast<double>(all_types.size()));
}

MetricVector class_metrics(const ClassDecl& c, const DesignModel& m, const ResolvedHierarchy& h) {
    MetricVector v;
    v.enm = encapsulation_metric(c);
    v.inm = inheritance_metric(c, h);
    v.cpm = coupling_metric(c, m);
    v.com = cohesion_metric(c, m);
    v.granularity = Granularity::Class;
    return v;
}

MetricVector project_metrics(const DesignModel& m, const ResolvedHierarchy& h, Aggregate agg) {
    if (m.classes.empty()) throw EmptyModelError("project metrics of an empty model");
    MetricVector acc;
    for (const auto& c : m.classes) {
        MetricVector v = class_metrics(c, m, h);
        acc.enm += v.enm;
        acc.inm += v.inm;
        acc.cpm += v.cpm;
        acc.com += v.com;
    }
    if (agg == Aggregate::Mean) {
        const double n = static_cast<double>(m.classes.size());
        acc.enm /= n;
        acc.inm /= n;
        acc.cpm /= n;
        acc.com /= n;
    }
    acc.granularity = Granularity::Project;
    return acc;
}

std::vector<MetricRow> metric_rows(const DesignModel& m, const ResolvedHierarchy& h,
                                   Aggregate agg) {
    std::vector<MetricRow> rows;
    for (const auto& c : m.classes)
        rows.push_back({m.project_name, c.name, class_metrics(c, m, h)});
    rows.push_back({m.project_name, "*", project_metrics(m, h, agg)});
    return rows;
}

std::string metrics_csv(const std::vector<MetricRow>& rows) {
    std::ostringstream out;
    out << "project,class,enm,inm,cpm,com\n";
    for (const auto& r : rows)
        out << r.project << ',' << r.class_name << ',' << fixed4(r.metrics.enm) << ','
            << fixed4(r.metrics.inm) << ',' << fixed4(r.metrics.cpm) << ','
            << fixed4(r.metrics.com) << '\n';
    return out.str();
}

}  // namespace dqa
