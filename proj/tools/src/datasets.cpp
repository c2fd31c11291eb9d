#include "kepfam_cli/datasets.hpp"

#include <map>
#include <sstream>

#include "json.hpp"
#include "kepfam/family.hpp"
#include "kepfam/propagator.hpp"
#include "kepfam/state.hpp"

namespace kepfam::cli {

namespace {

using Json = nlohmann::ordered_json;

void add_curve(Dataset& data, const std::string& set, const std::vector<Vec3>& points,
               std::optional<double> psi = std::nullopt) {
    for (std::size_t j = 0; j < points.size(); ++j) {
        data.rows.push_back({set, psi, static_cast<double>(j), points[j]});
    }
}

void add_point(Dataset& data, const std::string& set, const Vec3& point,
               std::optional<double> psi = std::nullopt) {
    data.rows.push_back({set, psi, std::nullopt, point});
}

// Two points at +-extent along the line, t holding the signed offset.
void add_line(Dataset& data, const std::string& set, const Vec3& base, const Vec3& direction,
              double extent, std::optional<double> psi) {
    for (double s : {-extent, extent}) {
        data.rows.push_back({set, psi, s, base + s * direction});
    }
}

void add_orbit(Dataset& data, const FamilyMember& member, const PhysParams& params, int points,
               std::optional<double> psi) {
    const double T = member.geometry.period;
    for (int j = 0; j < points; ++j) {
        const double t = T * j / points;
        data.rows.push_back({"orbit", psi, t, propagate_analytic(member.state, params, t).r});
    }
}

double unsigned_zero(double x) { return x + 0.0; }

Json vec_json(const Vec3& v) {
    return Json::array({unsigned_zero(v.x), unsigned_zero(v.y), unsigned_zero(v.z)});
}

Json conic_json(const NamedConic& named) {
    const ConicSpec& c = named.conic;
    Json j;
    j["name"] = named.name;
    j["kind"] = std::string(to_string(c.kind));
    j["focus1"] = vec_json(c.focus1);
    j["focus2"] = vec_json(c.focus2);
    j["major_axis"] = c.major_axis;
    j["eccentricity"] = c.eccentricity;
    j["plane_normal"] = vec_json(c.plane_normal);
    if (c.directrix) {
        j["directrix"] = {{"base", vec_json(c.directrix->base)},
                          {"normal", vec_json(c.directrix->normal)}};
    } else {
        j["directrix"] = nullptr;
    }
    return j;
}

Json conics_array(const Dataset& data) {
    Json arr = Json::array();
    for (const NamedConic& c : data.conics) {
        arr.push_back(conic_json(c));
    }
    return arr;
}

std::string optional_number(const std::optional<double>& x) {
    return x ? format_number(*x) : std::string();
}

} // namespace

Dataset orbit_dataset(const RunConfig& config) {
    const Scenario sc = resolve(config);
    const PhysParams& params = sc.spec.params();
    const FamilyMember& m = sc.member;
    const Vec3& normal = sc.spec.plane_normal();
    const double fall_radius = m.geometry.fall_radius;

    Dataset data;
    data.name = "orbit";
    add_orbit(data, m, params, config.samples, m.psi);
    const ConicSpec circle = make_circle(Vec3{}, fall_radius, normal);
    add_curve(data, "fall_circle", sample_conic(circle, config.samples));
    add_point(data, "fixed_point", m.state.r, m.psi);
    add_point(data, "fall_point", fall_point(m.state, params), m.psi);
    add_point(data, "second_focus", m.geometry.focus_t, m.psi);
    add_line(data, "tangent", m.state.r, normalized(m.state.p), fall_radius, m.psi);
    if (!lenz_is_zero(m.conserved.K, params)) {
        const Line d = directrix(m.state, params);
        add_line(data, "directrix", d.base, cross(normal, d.normal), 2.0 * fall_radius, m.psi);
    }

    data.conics.push_back({"orbit", make_ellipse(Vec3{}, m.geometry.focus_t, 2.0 * m.geometry.a, normal)});
    data.conics.push_back({"fall_circle", circle});
    return data;
}

Dataset family_dataset(const RunConfig& config, int members) {
    const Scenario sc = resolve(config);
    const FamilySpec& spec = sc.spec;

    Dataset data;
    data.name = "family";
    for (double psi : psi_grid(members)) {
        add_orbit(data, family_member(spec, psi), spec.params(), kCurvePoints, psi);
    }
    for (double psi : psi_grid(members)) {
        add_point(data, "focus_locus", family_member(spec, psi).geometry.focus_t, psi);
    }
    const ConicSpec focus_circle =
        make_circle(spec.r_fixed(), 2.0 * spec.a() - spec.r(), spec.plane_normal());
    const ConicSpec bounding = bounding_envelope(spec);
    add_curve(data, "focus_circle", sample_conic(focus_circle, kCurvePoints));
    add_curve(data, "bounding", sample_conic(bounding, kCurvePoints));
    add_point(data, "fixed_point", spec.r_fixed());

    data.conics.push_back({"focus_circle", focus_circle});
    data.conics.push_back({"bounding", bounding});
    return data;
}

Dataset envelope_dataset(const RunConfig& config, int members) {
    const Scenario sc = resolve(config);
    const FamilySpec& spec = sc.spec;
    const EnvelopeReport report = directrix_envelope(spec, members);
    const double extent = 4.0 * spec.a();

    Dataset data;
    data.name = "envelope";
    for (const MemberTangency& mt : report.per_member) {
        const FamilyMember m = family_member(spec, mt.psi);
        const Line d = directrix(m.state, spec.params());
        add_line(data, "directrix", d.base, cross(spec.plane_normal(), d.normal), extent, mt.psi);
    }
    for (const MemberTangency& mt : report.per_member) {
        add_point(data, "touch", mt.touch_point, mt.psi);
    }
    add_curve(data, "envelope", sample_conic(report.envelope, kCurvePoints));
    add_point(data, "fixed_point", spec.r_fixed());
    if (report.u_focus) {
        add_point(data, "u_focus", *report.u_focus);
        for (const MemberTangency& mt : report.per_member) {
            add_point(data, "v_focus", reflected_focus_v(spec, family_member(spec, mt.psi)), mt.psi);
        }
    }
    data.conics.push_back({"envelope", report.envelope});
    return data;
}

std::string dataset_csv(const Dataset& data) {
    std::ostringstream os;
    os << "set,psi,t,x,y,z\n";
    for (const PointRow& row : data.rows) {
        os << row.set << ',' << optional_number(row.psi) << ',' << optional_number(row.t) << ','
           << format_number(row.point.x) << ',' << format_number(row.point.y) << ','
           << format_number(row.point.z) << '\n';
    }
    return os.str();
}

std::string conics_json(const Dataset& data) {
    Json j;
    j["name"] = data.name;
    j["conics"] = conics_array(data);
    return j.dump(2) + "\n";
}

std::string dataset_json(const Dataset& data) {
    Json sets = Json::array();
    std::map<std::string, std::size_t> index;
    for (const PointRow& row : data.rows) {
        auto [it, fresh] = index.try_emplace(row.set, sets.size());
        if (fresh) {
            sets.push_back({{"set", row.set}, {"points", Json::array()}});
        }
        Json p;
        p["psi"] = row.psi ? Json(*row.psi) : Json(nullptr);
        p["t"] = row.t ? Json(*row.t) : Json(nullptr);
        p["x"] = unsigned_zero(row.point.x);
        p["y"] = unsigned_zero(row.point.y);
        p["z"] = unsigned_zero(row.point.z);
        sets[it->second]["points"].push_back(std::move(p));
    }
    Json j;
    j["name"] = data.name;
    j["point_sets"] = std::move(sets);
    j["conics"] = conics_array(data);
    return j.dump(2) + "\n";
}

} // namespace kepfam::cli
