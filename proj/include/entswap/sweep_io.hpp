// File formats for sweeps.
//
// CSV (UTF-8, LF line endings, numbers printed with %.12g):
//   index,family,n,link_params,etas,c_in_min,c_in_prod,c_out,f_out,entangled,useful
// link_params and etas join per-link / per-repeater groups with ';'. Werner
// links print p, Bell-diagonal links print (t1,t2,t3) and general links print
// (r1,r2,r3,s1,s2,s3,T11,T12,...,T33). Fields that contain a comma are wrapped
// in double quotes. Flags print as true / false.
//
// Summary JSON:
//   {"config_echo": {...}, "totals": {"samples", "entangled", "useful"},
//    "cells": [{"n", "eta", "samples", "entangled", "useful"}]}
// where a cell's eta is a number for uniform chains and an array otherwise.

#pragma once

#include "entswap/sweeplab.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace entswap {

std::string format_number(double value);

std::string records_to_csv(const std::vector<SweepRecord>& records);
void write_csv(const std::vector<SweepRecord>& records, const std::string& path);

nlohmann::ordered_json config_to_json(const SweepConfig& config);
// Unknown keys and malformed values raise ConfigError.
SweepConfig config_from_json(const nlohmann::json& doc);
// IoError when unreadable, ConfigError when not valid JSON or not a valid config.
SweepConfig load_config(const std::string& path);

std::string summary_to_json(const SweepSummary& summary, const SweepConfig& config);
void write_summary_json(const SweepSummary& summary, const SweepConfig& config, const std::string& path);

// Pretty-printed JSON (two-space indent, trailing newline) with every
// floating-point value written through format_number.
std::string to_json_text(const nlohmann::ordered_json& doc);

}  // namespace entswap
