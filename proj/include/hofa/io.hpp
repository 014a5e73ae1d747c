#pragma once

#include <string>

#include "json.hpp"

#include "hofa/fourier.hpp"
#include "hofa/function.hpp"
#include "hofa/gowers.hpp"
#include "hofa/multilinear.hpp"
#include "hofa/regularity.hpp"
#include "hofa/spectral.hpp"

namespace hofa::io {

using json = nlohmann::json;

/** Complex values are serialized as [re, im] pairs; doubles round trip
 *  losslessly (shortest-representation printing on output, exact parse on
 *  input). Malformed documents raise ParseError, well-formed documents
 *  with bad content raise ValidationError. */

json function_json(const GroupFunction& f);
GroupFunction function_from_json(const json& j);

json spectrum_json(const FourierSpectrum& s);
FourierSpectrum spectrum_from_json(const json& j);

json partition_json(const Partition& P);
Partition partition_from_json(const json& j);

json tensor_json(const MultilinearTensor& T);
MultilinearTensor tensor_from_json(const json& j);

json report_json(const AdditivityReport& r);
json report_json(const NonvanishingReport& r);
json report_json(const CharacterTestReport& r);
json report_json(const ComplexityReport& r);
json report_json(const DecompositionReport& r);
json report_json(const PipelineReport& r);

/** index,re,im rows (with header); only for single-factor cyclic groups.
 *  Values are printed with 17 significant digits. */
std::string function_to_csv(const GroupFunction& f);
GroupFunction function_from_csv(const std::string& text);

json parse_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/** Dispatch by extension: .csv reads the CSV layout, everything else JSON. */
GroupFunction load_function(const std::string& path);
void save_function(const std::string& path, const GroupFunction& f);
Partition load_partition(const std::string& path);

} // namespace hofa::io
