#pragma once

#include <string>
#include <vector>

#include "dqa/design_model.hpp"

namespace dqa {

enum class Granularity { Class, Project };
enum class Aggregate { Mean, Sum };

/// The four design-construct metric values for one class or one project.
struct MetricVector {
    double enm = 0.0;  // encapsulation: hidden-attribute ratio
    double inm = 0.0;  // inheritance: inherited-method ratio
    double cpm = 0.0;  // coupling: distinct referenced classes
    double com = 0.0;  // cohesion: parameter-type overlap
    Granularity granularity = Granularity::Class;
};

// Ratio of private+protected attributes to all attributes; 0 for attribute-less classes.
double encapsulation_metric(const ClassDecl& c);

// Ratio of inherited method signatures to all methods available; 0 when no methods at all.
double inheritance_metric(const ClassDecl& c, const ResolvedHierarchy& h);

// Count of distinct other model classes referenced via attribute or parameter types.
// Self-references and names not declared in the model are excluded.
double coupling_metric(const ClassDecl& c, const DesignModel& m);

// Parameter-type overlap: sum over methods of |param-types ∩ T| / (n_methods * |T|)
// with T the union of all parameter types. 1.0 when methods exist but all are
// parameterless, 0.0 when there are no methods.
double cohesion_metric(const ClassDecl& c, const DesignModel& m);

MetricVector class_metrics(const ClassDecl& c, const DesignModel& m, const ResolvedHierarchy& h);

// Component-wise aggregate over all classes; throws EmptyModelError on zero classes.
MetricVector project_metrics(const DesignModel& m, const ResolvedHierarchy& h,
                             Aggregate agg = Aggregate::Mean);

struct MetricRow {
    std::string project;
    std::string class_name;  // "*" for the project-level row
    MetricVector metrics;
};

std::vector<MetricRow> metric_rows(const DesignModel& m, const ResolvedHierarchy& h,
                                   Aggregate agg = Aggregate::Mean);

// CSV with header: project,class,enm,inm,cpm,com — numbers at 4 decimals.
std::string metrics_csv(const std::vector<MetricRow>& rows);

}  // namespace dqa
