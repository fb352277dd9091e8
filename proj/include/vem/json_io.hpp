#pragma once

#include <filesystem>
#include <string>

#include "vem/reduction_pipeline.hpp"
#include "vem/semi_principled.hpp"
#include "vem/simplified_model.hpp"

namespace vem {

/// Parameter file: one JSON document per vehicle with keys named after the
/// fitted-parameter symbols (v_c, a0..a4, beta, h0, h1, c0..c3, p0..p2, q0,
/// q1, z0..z2, b1..b6) plus `duty` and `name`. Fields of the other duty class
/// must be omitted. Unknown keys are rejected.
SimplifiedParams load_simplified_params(const std::filesystem::path& path);
SimplifiedParams parse_simplified_params(const std::string& json_text);
std::string simplified_params_to_json(const SimplifiedParams& params);
void save_simplified_params(const SimplifiedParams& params,
                            const std::filesystem::path& path);

/// Vehicle definition file with four top-level sections:
/// principled_constants, empirical_constants, principled_maps, empirical_maps.
/// Gear-indexed arrays are ordered from gear 1.
SemiPrincipledVehicle load_vehicle(const std::filesystem::path& path);
SemiPrincipledVehicle parse_vehicle(const std::string& json_text);
std::string vehicle_to_json(const SemiPrincipledVehicle& vehicle);
void save_vehicle(const SemiPrincipledVehicle& vehicle,
                  const std::filesystem::path& path);

std::string fit_report_to_json(const FitReport& report);

enum class ModelFileKind { Simplified, SemiPrincipled, GridDump, Unknown };
ModelFileKind sniff_model_file(const std::filesystem::path& path);

}  // namespace vem
