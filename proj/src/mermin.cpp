#include "rngwb/mermin.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "rngwb/prng.hpp"

namespace rngwb {

Correlators correlators(const MerminRecordSet& records) {
    std::size_t total[4] = {};
    std::size_t even_parity[4] = {};
    for (const MerminRecord& r : records.rounds) {
        const int setting = (r.x << 1) | r.y;
        ++total[setting];
        if (((r.a ^ r.b ^ r.c) & 1) == 0) ++even_parity[setting];
    }
    Correlators e{};
    for (int s = 0; s < 4; ++s) {
        if (total[s] == 0)
            throw std::invalid_argument("correlators: setting " + std::to_string(s >> 1) + "," +
                                        std::to_string(s & 1) + " never observed");
        const double p0 = static_cast<double>(even_parity[s]) / static_cast<double>(total[s]);
        e[s] = 2.0 * p0 - 1.0;
    }
    return e;
}

double mermin_value(const Correlators& e) { return e[0] - e[1] - e[2] - e[3]; }

MerminAdjustment adjust_mermin(double m_obs, std::size_t n, double eps_est, HoeffdingForm form) {
    if (n == 0) throw std::invalid_argument("adjust_mermin: n must be >= 1");
    if (!(eps_est > 0.0 && eps_est < 1.0))
        throw std::invalid_argument("adjust_mermin: eps_est must lie in (0, 1)");
    MerminAdjustment adj;
    const double ln_inv = -std::log(eps_est);
    switch (form) {
        case HoeffdingForm::Standard:
            adj.t = std::sqrt(ln_inv / (2.0 * static_cast<double>(n)));
            break;
        case HoeffdingForm::AsPrinted:
            adj.t = static_cast<double>(n) * ln_inv / 2.0;
            break;
    }
    adj.m_adj = m_obs - 16.0 * adj.t;
    return adj;
}

const RateFunction& default_rate_function() {
    static const RateFunction fn = [](double m) {
        constexpr double kClassical = 2.0;
        constexpr double kAnchorM = 3.75;
        constexpr double kAnchorRate = 0.518;
        constexpr double kMax = 4.0;
        if (m <= kClassical) return 0.0;
        if (m <= kAnchorM) return kAnchorRate * (m - kClassical) / (kAnchorM - kClassical);
        return kAnchorRate + (1.0 - kAnchorRate) * (m - kAnchorM) / (kMax - kAnchorM);
    };
    return fn;
}

double certified_rate(double m_adj, const RateFunction& model) {
    if (m_adj < -4.0 || m_adj > 4.0)
        throw std::invalid_argument("certified_rate: Mermin value outside [-4, 4]");
    return model(m_adj);
}

MerminRecordSet simulate_records(double visibility, std::size_t n, std::uint64_t rng_seed) {
    if (visibility < 0.0 || visibility > 1.0)
        throw std::invalid_argument("visibility must lie in [0, 1]");
    SplitMix64 rng(rng_seed);
    MerminRecordSet records;
    records.rounds.reserve(n);
    const double p_target = (1.0 + visibility) / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t w = rng.next_u64();
        const auto x = static_cast<std::uint8_t>(w & 1);
        const auto y = static_cast<std::uint8_t>((w >> 1) & 1);
        const auto a = static_cast<std::uint8_t>((w >> 2) & 1);
        const auto b = static_cast<std::uint8_t>((w >> 3) & 1);
        const int target_parity = (x == 0 && y == 0) ? 0 : 1;
        const int parity = rng.next_double() < p_target ? target_parity : 1 - target_parity;
        const auto c = static_cast<std::uint8_t>(parity ^ a ^ b);
        records.rounds.push_back({x, y, a, b, c});
    }
    return records;
}

BitString retained_bits(const MerminRecordSet& records) {
    if (records.empty()) throw std::invalid_argument("retained_bits: empty record set");
    BitString s;
    for (const MerminRecord& r : records.rounds) {
        s.push_back(r.a);
        s.push_back(r.b);
    }
    return s;
}

MerminAssessment analyze_records(const MerminRecordSet& records, double eps_est,
                                 HoeffdingForm form, const RateFunction& model) {
    MerminAssessment a;
    a.rounds = records.size();
    a.e = correlators(records);
    a.m_obs = mermin_value(a.e);
    const MerminAdjustment adj = adjust_mermin(a.m_obs, records.size(), eps_est, form);
    a.t = adj.t;
    a.m_adj = adj.m_adj;
    a.eps_est = eps_est;
    a.alpha_q = certified_rate(std::clamp(a.m_adj, -4.0, 4.0), model);
    return a;
}

std::string MerminAssessment::to_json() const {
    nlohmann::json j;
    j["E"]["000"] = e[0];
    j["E"]["011"] = e[1];
    j["E"]["101"] = e[2];
    j["E"]["110"] = e[3];
    j["M_obs"] = m_obs;
    j["t"] = t;
    j["M_adj"] = m_adj;
    j["eps_est"] = eps_est;
    j["alpha_Q"] = alpha_q;
    j["rounds"] = rounds;
    return j.dump(2);
}

void write_records_csv(const MerminRecordSet& records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "x,y,a,b,c\n";
    for (const MerminRecord& r : records.rounds)
        out << int(r.x) << ',' << int(r.y) << ',' << int(r.a) << ',' << int(r.b) << ','
            << int(r.c) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

MerminRecordSet read_records_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open records file: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "x,y,a,b,c")
        throw std::runtime_error("records file missing 'x,y,a,b,c' header: " + path.string());
    MerminRecordSet records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        int vals[5];
        int field = 0;
        std::size_t pos = 0;
        while (field < 5) {
            const std::size_t comma = line.find(',', pos);
            const std::string tok = line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                                : comma - pos);
            if (tok != "0" && tok != "1")
                throw std::runtime_error("bad record value at line " + std::to_string(lineno));
            vals[field++] = tok == "1" ? 1 : 0;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (field != 5)
            throw std::runtime_error("expected 5 fields at line " + std::to_string(lineno));
        records.rounds.push_back({static_cast<std::uint8_t>(vals[0]),
                                  static_cast<std::uint8_t>(vals[1]),
                                  static_cast<std::uint8_t>(vals[2]),
                                  static_cast<std::uint8_t>(vals[3]),
                                  static_cast<std::uint8_t>(vals[4])});
    }
    return records;
}

}  // namespace rngwb
