// SPDX-License-Identifier: Apache-2.0
// Reference values frozen from a statistics package. Regenerate with
// gen_stats_reference.py.
#pragma once

#include <utility>
#include <vector>

namespace pmat::test {

struct SampleCase {
  std::vector<double> a;
  std::vector<double> b;
  double p;  ///< two-sided
};

inline const std::vector<SampleCase>& welch_cases() {
  static const std::vector<SampleCase> cases{
      {{80.0, 81.0, 82.0, 83.0, 84.0},
       {76.0, 78.0, 80.0, 82.0, 84.0},
       0.25370240620241763},
      {{91.3674, 87.1518, 82.4502, 89.195, 76.3192, 86.9014},
       {89.1942, 81.4001},
       0.9586818849706469},
      {{82.9837, 75.8773, 73.7021, 68.3168, 69.5737, 71.0588, 71.0572, 70.9907},
       {78.1354, 69.6702, 58.2537},
       0.5415642686914404},
      {{66.6595, 72.4033, 73.3234, 65.3954, 70.6833, 77.2655},
       {77.2323, 71.8325},
       0.38482475801258353},
      {{73.5998, 70.8997},
       {76.981, 87.1991, 80.1661},
       0.07872797593377309},
      {{68.7985, 62.3016, 65.3169},
       {51.6851, 65.5889, 65.3052, 69.1748, 52.9188, 55.8603, 57.0679, 55.7785},
       0.06917220541122819},
      {{69.4294, 52.4446},
       {66.9531, 70.1867, 64.5078, 53.4204, 61.9783, 59.5067},
       0.8666063133237818},
      {{67.0241, 66.021},
       {68.5838, 54.4931, 56.6029, 64.3668},
       0.19317303763617974},
      {{82.3011, 65.8822, 71.6024, 79.3945, 70.5631, 77.6495},
       {79.1087, 83.0205, 80.0581, 83.6598, 80.5767},
       0.04524848393161742},
      {{86.2931, 80.3356, 62.5087, 79.5854, 70.063, 82.4575, 71.784, 83.369},
       {76.3287, 74.6161, 78.6907, 74.654, 78.5972, 69.4656, 76.8461, 79.8152},
       0.7719747597024915},
      {{60.2285, 56.2788},
       {67.1053, 65.1251, 67.3069},
       0.11798050425006808},
      {{64.4621, 67.6372, 64.9238},
       {68.6841, 54.6646, 69.9634, 67.0166, 58.1102, 51.7383, 49.5196, 64.7099},
       0.12591472505621387},
      {{73.6571, 75.0797},
       {75.3109, 82.1573, 79.2663, 77.4695, 76.8788},
       0.03887206191205594},
      {{55.2796, 64.6538, 64.2341, 49.4295, 77.6227, 47.2384, 56.8283},
       {65.9015, 58.7512, 64.2886, 61.5074, 73.344, 66.376},
       0.23156498667050207},
      {{64.7522, 64.2135, 63.7153},
       {64.1713, 72.4544, 72.3375},
       0.18497710966057634},
      {{82.2385, 72.5552, 68.0101, 69.3182, 65.3782, 74.1398},
       {71.2202, 71.3477, 66.2647, 70.6029},
       0.4675846739950472},
      {{84.0547, 91.4852, 88.8048, 83.1574},
       {78.9369, 85.2953, 75.3706, 75.2396, 72.8999, 79.5693, 75.9453, 87.8041},
       0.01838863271298348},
      {{79.3598, 78.9394, 79.7607, 78.9652, 80.1989, 79.3879, 80.1664, 80.157},
       {81.5208, 96.8216, 81.7712},
       0.2961543060845181},
      {{76.2977, 72.4772},
       {76.2544, 70.2598},
       0.785242905547824},
      {{71.6611, 79.2478, 80.9925, 76.6231, 92.2724},
       {74.3823, 80.066, 82.1935, 83.5825, 79.2524},
       0.946436090909867},
      {{79.2123, 75.2237, 78.0234},
       {89.8446, 77.7991},
       0.47989390056739567},
  };
  return cases;
}

inline const std::vector<SampleCase>& paired_cases() {
  static const std::vector<SampleCase> cases{
      {{82.5191, 70.6127, 87.6445, 69.6094, 76.4818, 85.1484, 88.4751, 77.8964},
       {69.4406, 70.5603, 66.9037, 80.2009, 66.478, 83.2612, 74.9128, 68.1024},
       0.07202954803910094},
      {{80.3746, 79.9741, 78.9232, 77.5053, 78.7424},
       {75.8669, 73.4565, 73.3557, 72.0847, 73.2621},
       6.621702838509296e-05},
      {{80.4344, 98.5339, 82.1754},
       {100.4442, 93.9915, 91.0981},
       0.3706530226292363},
      {{64.0124, 62.4384, 60.9861, 61.4487},
       {67.2001, 66.5274, 67.8758, 67.6266},
       0.009914222897707204},
      {{79.6931, 78.5488, 80.2042, 84.4273, 73.5442, 83.0885, 80.2241, 78.1615},
       {78.9577, 80.6659, 79.4622, 79.6294, 77.5597, 79.8183, 79.8378, 78.5876},
       0.6814369954626989},
      {{70.7363, 73.4666, 72.5351, 71.173, 61.7214, 75.8114, 74.1679, 78.2469},
       {70.3304, 65.8522, 58.3375, 52.2056, 75.1171, 59.8277, 66.2188, 64.1403},
       0.06260634722420362},
      {{73.43, 74.2211, 76.928, 84.2856, 74.0365},
       {86.002, 83.1487, 79.8254, 82.4487, 74.9171},
       0.1515507842724765},
      {{60.1946, 63.1255, 59.987, 62.8148, 65.2408, 62.2264, 60.4247},
       {51.7237, 56.3407, 62.5733, 72.1359, 59.9198, 49.1122, 66.9088},
       0.5154295723628974},
      {{87.5925, 77.8956, 84.1018},
       {68.58, 75.5173, 73.4638},
       0.1562293396018277},
      {{47.0289, 58.7952, 65.9774, 69.6635, 51.2477, 61.6441},
       {59.7886, 57.7594, 55.5269, 55.9778, 55.9988, 61.1017},
       0.7443563388496068},
      {{82.9158, 82.634, 83.6714},
       {78.7546, 74.8752, 72.9196},
       0.058074598963673355},
      {{77.2933, 60.5961, 71.1986, 66.7322, 61.0431, 75.1797, 71.2359},
       {52.6075, 55.6806, 58.8264, 55.8888, 67.4754, 52.8029, 58.2045},
       0.025721745180852258},
      {{73.1531, 70.2684},
       {60.8291, 62.1805},
       0.1302690930820046},
      {{64.7326, 80.9035, 63.5265, 70.6604, 69.6067, 70.6368},
       {66.3102, 66.9742, 68.3439, 68.8723, 67.415, 68.1482},
       0.4088441734258567},
      {{79.5377, 85.3147, 82.0261, 83.8278},
       {82.6894, 81.4484, 82.9776, 82.0673},
       0.820135770575344},
      {{88.6241, 89.0304},
       {86.5722, 86.0046},
       0.1206382451107799},
      {{87.3366, 94.9677, 86.5532},
       {95.0631, 89.9354, 92.3051},
       0.5512986187574299},
      {{78.5423, 78.2605, 78.8068, 78.5362},
       {71.508, 81.9567, 75.757, 79.6793},
       0.6173313942545504},
      {{81.4177, 79.3818, 73.1872, 82.1776, 80.2741, 79.4199, 82.6969},
       {84.7051, 77.0711, 83.6173, 82.2124, 72.7119, 81.7359, 84.4166},
       0.6060868738832961},
      {{89.9828, 99.0453, 83.4448, 89.7123, 87.743},
       {90.2369, 81.4814, 87.9354, 74.588, 88.0383},
       0.2863225468325952},
  };
  return cases;
}

/// (df, t_{0.975, df})
inline const std::vector<std::pair<double, double>>& t975_table() {
  static const std::vector<std::pair<double, double>> rows{
      {1.0, 12.706204736432095},
      {2.0, 4.302652729696142},
      {3.0, 3.182446305284263},
      {4.0, 2.7764451051977987},
      {5.0, 2.570581835636314},
      {6.0, 2.4469118511449692},
      {7.0, 2.3646242515927844},
      {8.0, 2.306004135204166},
      {9.0, 2.2621571628540993},
      {10.0, 2.2281388519649385},
      {11.0, 2.200985160082949},
      {12.0, 2.1788128296634177},
      {13.0, 2.1603686564610127},
      {14.0, 2.1447866879169273},
      {15.0, 2.131449545559323},
      {16.0, 2.1199052992210112},
      {17.0, 2.1098155778331806},
      {18.0, 2.10092204024096},
      {19.0, 2.093024054408263},
      {20.0, 2.0859634472658364},
      {21.0, 2.079613844727662},
      {22.0, 2.0738730679040147},
      {23.0, 2.0686576104190406},
      {24.0, 2.0638985616280205},
      {25.0, 2.059538552753294},
      {26.0, 2.055529438642871},
      {27.0, 2.0518305164802833},
      {28.0, 2.048407141795244},
      {29.0, 2.045229642132703},
      {30.0, 2.0422724563012373},
      {31.0, 2.0395134463964077},
      {32.0, 2.036933343460101},
      {33.0, 2.0345152974493383},
      {34.0, 2.032244509317718},
      {35.0, 2.0301079282503425},
      {36.0, 2.0280940009804502},
      {37.0, 2.0261924630291093},
      {38.0, 2.024394163911969},
      {39.0, 2.0226909200367604},
      {40.0, 2.0210753903062733},
      {45.0, 2.014103388880846},
      {60.0, 2.00029782201426},
      {100.0, 1.9839715184496334},
      {1000.0, 1.9623390808264074},
  };
  return rows;
}

struct BetaCase {
  double a, b, x, value;
};

inline const std::vector<BetaCase>& incomplete_beta_cases() {
  static const std::vector<BetaCase> rows{
      {0.5, 0.5, 0.3, 0.36901011956554536},
      {2.0, 3.0, 0.4, 0.5247999999999999},
      {0.5, 2.0, 0.9, 0.9961174629530394},
      {10.0, 0.5, 0.95, 0.317151575465545},
      {1.5, 1.5, 0.5, 0.4999999999999998},
      {30.0, 0.5, 0.2, 1.2265219714158866e-22},
      {2.5, 7.0, 0.01, 0.0004775896614751449},
      {0.5, 50.0, 0.999, 1.0},
  };
  return rows;
}

}  // namespace pmat::test
