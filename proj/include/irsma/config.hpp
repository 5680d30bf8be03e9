// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IRSMA_CONFIG_HPP
#define IRSMA_CONFIG_HPP

#include "irsma/system_model.hpp"

#include <map>
#include <string>
#include <vector>

namespace irsma
{

// One "[name]" block of a config file. Keys keep their first occurrence line for error messages.
struct ConfigSection
{
    std::string name;
    int line = 0;
    std::map<std::string, std::string> values;
    std::map<std::string, int> lines;

    bool has(const std::string &key) const { return values.count(key) != 0; }
    const std::string &get(const std::string &key) const;
    double get_double(const std::string &key) const;
    double get_double(const std::string &key, double fallback) const;
    long long get_int(const std::string &key) const;
    long long get_int(const std::string &key, long long fallback) const;
    std::vector<double> get_list(const std::string &key) const;
    Point3 get_point(const std::string &key) const;
};

// Sections in file order; repeated names (e.g. [device]) are kept as separate entries.
struct ConfigDocument
{
    std::vector<ConfigSection> sections;

    const ConfigSection *find(const std::string &name) const;
    std::vector<const ConfigSection *> find_all(const std::string &name) const;
};

// '#' and ';' start comments; "key = value" lines; "[section]" headers.
ConfigDocument parse_config_text(const std::string &text);
ConfigDocument load_config_file(const std::string &path);

// Builds a SystemConfig from the [system] and [device] sections.
// Units: bandwidth Hz, noise_power_dbm dBm, ref_gain_db dB, positions m,
// max_power_dbm dBm, energy_j J, target_kbits Kbits (1 Kbit = 1000 bits).
SystemConfig system_config_from(const ConfigDocument &doc);
SystemConfig load_system_config(const std::string &path);

std::vector<double> parse_number_list(const std::string &text);

} // namespace irsma

#endif
