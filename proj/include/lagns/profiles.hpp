#pragma once

#include <string>
#include <string_view>

#include "lagns/grid.hpp"

namespace lagns {

enum class ProfileKind { Equilibrium, GaussianBump, ColdSpot, LargeDataComposite };

std::string_view to_string(ProfileKind kind);
ProfileKind parse_profile_kind(std::string_view name);

enum class Field { V, U, Theta };

std::string_view to_string(Field field);
Field parse_field(std::string_view name);

/// Named initial data. All shapes are built from the Gaussian
///   bump(x) = exp(-((x - center) / width)^2)
/// and its odd companion sqrt(2e) ((x - center)/width) bump(x), which peaks at 1.
///
///   equilibrium           (1, 0, 1)
///   gaussian-bump         `field` gets amplitude * bump (u: the odd companion)
///   cold-spot             theta = 1 - (1 - theta_min) bump, v = 1, u = 0
///   large-data-composite  v = 1 + 0.8 bump, u = 0.5 odd, theta = 1 - 0.5 bump
struct ProfileSpec {
  ProfileKind kind = ProfileKind::Equilibrium;
  Field field = Field::V;
  double amplitude = 0.1;
  double width = 1.0;
  double center = 0.0;
  double theta_min = 0.1;
};

double bump(double x, double center, double width);
double odd_bump(double x, double center, double width);

InitialProfiles make_profiles(const ProfileSpec& spec);

}  // namespace lagns
