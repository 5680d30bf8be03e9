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

#include "irsma/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace irsma
{

namespace
{

std::string trim(const std::string &s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string &text, const std::string &what)
{
    const std::string t = trim(text);
    double value = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw std::invalid_argument(what + ": \"" + t + "\" is not a number.");
    return value;
}

std::string where(const ConfigSection &s, const std::string &key)
{
    const auto it = s.lines.find(key);
    const int line = it == s.lines.end() ? s.line : it->second;
    return "[" + s.name + "] " + key + " (line " + std::to_string(line) + ")";
}

void check_keys(const ConfigSection &s, const std::set<std::string> &allowed)
{
    for (const auto &[key, value] : s.values)
    {
        if (allowed.count(key) == 0)
            throw std::invalid_argument("Unknown key " + where(s, key) + ".");
    }
}

} // namespace

const std::string &ConfigSection::get(const std::string &key) const
{
    const auto it = values.find(key);
    if (it == values.end())
        throw std::invalid_argument("Missing key \"" + key + "\" in [" + name + "] (line " + std::to_string(line) + ").");
    return it->second;
}

double ConfigSection::get_double(const std::string &key) const
{
    return to_double(get(key), where(*this, key));
}

double ConfigSection::get_double(const std::string &key, double fallback) const
{
    return has(key) ? get_double(key) : fallback;
}

long long ConfigSection::get_int(const std::string &key) const
{
    const std::string t = trim(get(key));
    long long value = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw std::invalid_argument(where(*this, key) + ": \"" + t + "\" is not an integer.");
    return value;
}

long long ConfigSection::get_int(const std::string &key, long long fallback) const
{
    return has(key) ? get_int(key) : fallback;
}

std::vector<double> ConfigSection::get_list(const std::string &key) const
{
    try
    {
        return parse_number_list(get(key));
    }
    catch (const std::invalid_argument &e)
    {
        throw std::invalid_argument(where(*this, key) + ": " + e.what());
    }
}

Point3 ConfigSection::get_point(const std::string &key) const
{
    const auto v = get_list(key);
    if (v.size() != 3)
        throw std::invalid_argument(where(*this, key) + ": expected three coordinates.");
    return {v[0], v[1], v[2]};
}

const ConfigSection *ConfigDocument::find(const std::string &name) const
{
    for (const auto &s : sections)
    {
        if (s.name == name)
            return &s;
    }
    return nullptr;
}

std::vector<const ConfigSection *> ConfigDocument::find_all(const std::string &name) const
{
    std::vector<const ConfigSection *> out;
    for (const auto &s : sections)
    {
        if (s.name == name)
            out.push_back(&s);
    }
    return out;
}

std::vector<double> parse_number_list(const std::string &text)
{
    std::vector<double> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ','))
        out.push_back(to_double(item, "List entry"));
    if (out.empty())
        throw std::invalid_argument("Empty number list.");
    return out;
}

ConfigDocument parse_config_text(const std::string &text)
{
    ConfigDocument doc;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw))
    {
        ++line_no;
        const auto hash = raw.find_first_of("#;");
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']' || line.size() < 3)
                throw std::invalid_argument("Malformed section header on line " + std::to_string(line_no) + ".");
            ConfigSection s;
            s.name = trim(line.substr(1, line.size() - 2));
            s.line = line_no;
            doc.sections.push_back(std::move(s));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("Expected \"key = value\" on line " + std::to_string(line_no) + ".");
        if (doc.sections.empty())
            throw std::invalid_argument("Key outside of any section on line " + std::to_string(line_no) + ".");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("Empty key on line " + std::to_string(line_no) + ".");
        auto &s = doc.sections.back();
        if (s.values.count(key))
            throw std::invalid_argument("Duplicate key \"" + key + "\" on line " + std::to_string(line_no) + ".");
        s.values[key] = value;
        s.lines[key] = line_no;
    }
    return doc;
}

ConfigDocument load_config_file(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("Cannot open config file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_config_text(buf.str());
}

SystemConfig system_config_from(const ConfigDocument &doc)
{
    const ConfigSection *sys = doc.find("system");
    if (sys == nullptr)
        throw std::invalid_argument("Config has no [system] section.");
    check_keys(*sys, {"N", "bandwidth", "noise_power_dbm", "alpha_direct", "alpha_cascaded", "ref_gain_db",
                      "rng_seed", "bs_pos", "irs_pos", "regime"});

    SystemConfig cfg;
    cfg.irs_elements = static_cast<int>(sys->get_int("N"));
    cfg.bandwidth_hz = sys->get_double("bandwidth", 500e3);
    cfg.noise_power_w = dbm_to_watt(sys->get_double("noise_power_dbm", -80.0));
    cfg.alpha_direct = sys->get_double("alpha_direct", 3.6);
    cfg.alpha_cascaded = sys->get_double("alpha_cascaded", 2.2);
    cfg.ref_gain_db = sys->get_double("ref_gain_db", -30.0);
    const long long seed = sys->get_int("rng_seed", 0);
    if (seed < 0)
        throw std::invalid_argument("rng_seed cannot be negative.");
    cfg.rng_seed = static_cast<std::uint64_t>(seed);
    cfg.bs_pos = sys->has("bs_pos") ? sys->get_point("bs_pos") : Point3{0.0, 0.0, 0.0};
    cfg.irs_pos = sys->has("irs_pos") ? sys->get_point("irs_pos") : Point3{30.0, 0.0, 5.0};

    const std::string regime = sys->has("regime") ? sys->get("regime") : std::string("power");
    if (regime == "power")
        cfg.regime = BudgetRegime::Power;
    else if (regime == "energy")
        cfg.regime = BudgetRegime::Energy;
    else
        throw std::invalid_argument("regime must be \"power\" or \"energy\", got \"" + regime + "\".");

    for (const ConfigSection *dev : doc.find_all("device"))
    {
        check_keys(*dev, {"pos", "max_power_dbm", "energy_j", "target_kbits"});
        Device d;
        d.position = dev->get_point("pos");
        d.target_bits = dev->get_double("target_kbits") * 1e3;
        const bool has_power = dev->has("max_power_dbm");
        const bool has_energy = dev->has("energy_j");
        if (has_power == has_energy)
            throw std::invalid_argument("[device] on line " + std::to_string(dev->line) +
                                        " needs exactly one of max_power_dbm or energy_j.");
        if (has_power != (cfg.regime == BudgetRegime::Power))
            throw std::invalid_argument("[device] on line " + std::to_string(dev->line) +
                                        " has a budget that does not match the system regime.");
        d.budget = has_power ? dbm_to_watt(dev->get_double("max_power_dbm")) : dev->get_double("energy_j");
        cfg.devices.push_back(d);
    }
    cfg.validate();
    return cfg;
}

SystemConfig load_system_config(const std::string &path)
{
    return system_config_from(load_config_file(path));
}

} // namespace irsma
