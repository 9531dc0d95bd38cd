#pragma once

#include <string>
#include <vector>

#include "ogk/fieldlab.hpp"
#include "ogk/groupoid.hpp"
#include "ogk/orlicz.hpp"
#include "ogk/report.hpp"

namespace ogk::io {

// File formats are documented in docs/formats.md.

FiniteGroupoid load_groupoid(const std::string& path);
void save_groupoid(const FiniteGroupoid& g, const std::string& path);

HaarSystem load_haar(const std::string& path, const FiniteGroupoid& g);
Section load_section(const std::string& path, const FiniteGroupoid& g);
void save_section(const Section& s, const FiniteGroupoid& g, const std::string& path);

ParametrizedFamily load_family(const std::string& path);

/// "zoo:<id>" or a JSON file path.
FiniteGroupoid groupoid_from_arg(const std::string& arg);
/// "counting", "weighted:<m0>,<m1>,...", or a JSON file path.
HaarSystem haar_from_arg(const std::string& arg, const FiniteGroupoid& g);

std::string report_to_json(const std::vector<SuiteReport>& reports, bool all_pass);
void write_report_json(const std::vector<SuiteReport>& reports, bool all_pass,
                       const std::string& path);
void write_report_csv(const std::vector<SuiteReport>& reports, const std::string& path);

void write_profile_csv(const NormProfile& profile, const std::string& path);

}  // namespace ogk::io
