#include "ectl/schedule.hpp"

#include <cmath>
#include <json.hpp>

namespace ectl {

double event_start(const PulseEvent& e) {
    if (const auto* d = std::get_if<DiracPulse>(&e)) return d->t;
    return std::get<ConstantSegment>(e).t0;
}

double event_end(const PulseEvent& e) {
    if (const auto* d = std::get_if<DiracPulse>(&e)) return d->t;
    return std::get<ConstantSegment>(e).t1;
}

void ControlSchedule::validate() const {
    double cursor = 0.0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const PulseEvent& e = events[i];
        const double t0 = event_start(e);
        if (!std::isfinite(t0) || t0 < 0.0)
            throw ScheduleError("event " + std::to_string(i) + " has invalid start time");
        if (const auto* c = std::get_if<ConstantSegment>(&e)) {
            if (!(c->t1 > c->t0))
                throw ScheduleError("constant segment " + std::to_string(i) +
                                    " has nonpositive length");
        }
        if (i > 0 && t0 < event_start(events[i - 1]))
            throw ScheduleError("events not sorted by start time (event " + std::to_string(i) +
                                ")");
        if (t0 < cursor - 1e-15)
            throw ScheduleError("event " + std::to_string(i) + " overlaps event " +
                                std::to_string(i - 1));
        cursor = std::max(cursor, event_end(e));
    }
    if (!events.empty() && horizon < cursor - 1e-15)
        throw ScheduleError("horizon precedes the last event");
    if (horizon < 0.0) throw ScheduleError("negative horizon");
}

std::size_t ControlSchedule::dirac_count() const {
    std::size_t n = 0;
    for (const auto& e : events) n += std::holds_alternative<DiracPulse>(e);
    return n;
}

std::size_t ControlSchedule::trip_count() const {
    std::size_t n = 0;
    for (const auto& e : events)
        if (const auto* d = std::get_if<DiracPulse>(&e))
            if (std::abs(d->beta) + std::abs(d->gamma) >= M_PI / 2.0) ++n;
    return n;
}

void ControlSchedule::append(const ControlSchedule& other) {
    const double shift = horizon;
    for (PulseEvent e : other.events) {
        if (auto* d = std::get_if<DiracPulse>(&e)) {
            d->t += shift;
        } else {
            auto& c = std::get<ConstantSegment>(e);
            c.t0 += shift;
            c.t1 += shift;
        }
        events.push_back(e);
    }
    horizon += other.horizon;
}

ControlSchedule rectangularize(const ControlSchedule& schedule, double eps) {
    schedule.validate();
    if (!(eps > 0.0)) throw PreconditionError("rectangularize needs eps > 0");

    double prev_dirac = -1.0;
    for (const auto& e : schedule.events) {
        if (const auto* d = std::get_if<DiracPulse>(&e)) {
            if (prev_dirac >= 0.0 && d->t - prev_dirac <= eps)
                throw PreconditionError("eps exceeds a gap between consecutive Dirac times");
            prev_dirac = d->t;
        }
    }

    ControlSchedule out;
    double shift = 0.0;
    for (const auto& e : schedule.events) {
        if (const auto* d = std::get_if<DiracPulse>(&e)) {
            ConstantSegment c;
            c.t0 = d->t + shift;
            c.t1 = c.t0 + eps;
            c.u = d->beta / eps;
            c.v = d->gamma / eps;
            out.events.emplace_back(c);
            shift += eps;
        } else {
            ConstantSegment c = std::get<ConstantSegment>(e);
            c.t0 += shift;
            c.t1 += shift;
            out.events.emplace_back(c);
        }
    }
    out.horizon = schedule.horizon + shift;
    out.validate();
    return out;
}

std::string schedule_to_json(const ControlSchedule& schedule) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : schedule.events) {
        if (const auto* d = std::get_if<DiracPulse>(&e)) {
            arr.push_back({{"type", "dirac"}, {"t", d->t}, {"beta", d->beta}, {"gamma", d->gamma}});
        } else {
            const auto& c = std::get<ConstantSegment>(e);
            arr.push_back(
                {{"type", "const"}, {"t0", c.t0}, {"t1", c.t1}, {"u", c.u}, {"v", c.v}});
        }
    }
    arr.push_back({{"horizon", schedule.horizon}});
    return arr.dump(2);
}

ControlSchedule schedule_from_json(const std::string& text) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("schedule JSON: ") + e.what());
    }
    if (!arr.is_array()) throw ParseError("schedule JSON: expected a top-level array");
    ControlSchedule s;
    bool saw_horizon = false;
    for (const auto& item : arr) {
        if (item.contains("horizon")) {
            s.horizon = item.at("horizon").get<double>();
            saw_horizon = true;
            continue;
        }
        const std::string type = item.at("type").get<std::string>();
        if (type == "dirac") {
            DiracPulse d;
            d.t = item.at("t").get<double>();
            d.beta = item.at("beta").get<double>();
            d.gamma = item.at("gamma").get<double>();
            s.events.emplace_back(d);
        } else if (type == "const") {
            ConstantSegment c;
            c.t0 = item.at("t0").get<double>();
            c.t1 = item.at("t1").get<double>();
            c.u = item.at("u").get<double>();
            c.v = item.at("v").get<double>();
            s.events.emplace_back(c);
        } else {
            throw ParseError("schedule JSON: unknown event type '" + type + "'");
        }
    }
    if (!saw_horizon) throw ParseError("schedule JSON: missing horizon record");
    s.validate();
    return s;
}

} // namespace ectl
