#include "dforge/fixtures/stethoscope.hpp"

#include <cstdio>

#include "dforge/needspec/constraint.hpp"
#include "dforge/needspec/needspec.hpp"

namespace dforge::fixtures {

namespace {

using tournament::Mark;
using tournament::Outcome;

std::string opp(int n) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "opp%02d", n);
  return buf;
}

std::string metric(int n) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "m%02d", n);
  return buf;
}

std::string need(int n) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "need%02d", n);
  return buf;
}

// "110" -> pass, pass, fail; "1 1" -> pass, unknown, pass.
std::vector<Mark> marks(std::string_view pattern) {
  std::vector<Mark> out;
  for (char c : pattern) out.push_back(c == '1' ? Mark::pass : c == '0' ? Mark::fail : Mark::unknown);
  return out;
}

tournament::VerdictRow row(int opportunity, std::string_view pattern, std::optional<Outcome> declared) {
  return {opp(opportunity), marks(pattern), declared};
}

constexpr auto kPass = Outcome::pass;
constexpr auto kFail = Outcome::fail;

ExactDecimal dec(const char* text) { return ExactDecimal::parse(text); }

void add_metadata(Project& p) {
  p.metadata["project"] = "Advanced digital stethoscope";
  p.metadata["mission.product_description"] = "The stethoscope operates by using Lithium-Ion battery";
  p.metadata["mission.primary_market"] =
      "Hospitals, clinics, and NGOs; biomedical equipment and medical device sellers; private cardiology "
      "device importers";
  p.metadata["mission.secondary_markets"] = "Biomedical instrumentation centers; private nursing homes";
  p.metadata["timing"] = "Planning in November, concept selection by the second week of January";
}

void add_criteria(Project& p) {
  CriterionSet screening{"screening", "Opportunity screening criteria", {}};
  for (auto [id, name] : std::initializer_list<std::pair<const char*, const char*>>{
           {"biocompatibility", "Biocompatibility"},
           {"raw-material", "Raw material"},
           {"customer-need", "Customer need"},
           {"cost", "Cost"},
           {"performance", "Performance & Reliability"},
           {"risk", "Risk (low to medium)"},
           {"customizability", "Customizability"},
           {"market-demand", "Market demand"},
           {"aesthetics", "Aesthetics and usability"},
           {"developing-time", "Developing time"}}) {
    screening.criteria.push_back({id, name, std::nullopt, std::nullopt});
  }
  p.criterion_sets.push_back(std::move(screening));

  CriterionSet selection{"selection", "Concept selection criteria", {}};
  auto add = [&](const char* id, const char* name, const char* weight, std::optional<std::string> parent = {}) {
    selection.criteria.push_back({id, name, dec(weight), std::move(parent)});
  };
  add("portability", "Light weighted (Portability)", "0.1");
  add("sensitivity", "Sensitivity (frequency response)", "0.15");
  add("transmission", "Transmission Quality", "0.15");
  add("maintenance", "Ease of maintenance", "0.1");
  add("ease-of-use", "Easy to use", "0.15");
  add("ease-of-loading", "Ease of loading", "0.05", "ease-of-use");
  add("ease-of-reading", "Ease of reading", "0.05", "ease-of-use");
  add("ease-of-cleaning", "Ease of cleaning", "0.05", "ease-of-use");
  add("signal-quality", "Signal quality (output)", "0.2");
  add("power", "Low power consumption", "0.05");
  add("low-cost", "Cost", "0.1");
  p.criterion_sets.push_back(std::move(selection));
}

void add_opportunities(Project& p) {
  const char* titles[30] = {
      "Remote dielectric sensing",
      "Pneumatically external cardiac compressor",
      "An external transcutaneous cardiac pacemaker (noninvasive)",
      "Bio-impedance sensors",
      "Cardiopulmonary exercise testing",
      "Arrhythmia detector and alarm",
      "Blood pressure alarm",
      "Wireless implantable fiber-optic oximeter catheter",
      "Automatic syringe actuator for an injector",
      "Handheld echocardiography",
      "Prosthetic vascular grafts with fewer thrombogenic surfaces",
      "Wearable cardiac defibrillator",
      "Implantable cardioverter-defibrillators",
      "A ventricular bypass (assist) device",
      "Cardiovascular stent",
      "Heart preservation/transport system",
      "Automatic rotating tourniquet",
      "A high-energy DC-defibrillator",
      "A compressible limb sleeve with flexible fabric",
      "A CPR aid device with feedback",
      "Surgical vessel dilator",
      "Endovascular suturing system",
      "Pacemakers with piezoelectric that has better durability and portability",
      "Cardiovascular intravascular filter",
      "Automatic portable blood component extractor",
      "Oscillometer blood volume measuring device",
      "Mechanical ventilator with automatic moisture control",
      "Electronic stethoscope with Wi-Fi or Bluetooth smartphone link",
      "Electronic stethoscope that records and sends auscultation for a second opinion",
      "Advanced digital stethoscope",
  };
  for (int i = 0; i < 30; ++i) {
    p.opportunities.push_back({opp(i + 1), titles[i], ""});
  }
  p.opportunities[29].description =
      "Advanced digital stethoscope with loaded filtering and amplifying electronics and artificial intelligence";
}

void add_funnel(Project& p) {
  tournament::Stage a;
  a.name = "A: screening";
  a.criteria = {"biocompatibility", "raw-material", "customer-need"};
  a.unknown_policy = tournament::UnknownPolicy::require_explicit;
  a.declared_survivors = 10;
  a.verdicts = {
      row(1, "100", kFail),  row(2, "110", kFail),  row(3, "111", kPass),  row(4, "110", kFail),
      row(5, "101", kFail),  row(6, "110", kFail),  row(7, "111", kPass),  row(8, "111", kPass),
      row(9, "111", kPass),  row(10, "100", kFail), row(11, "111", kPass), row(12, "111", kPass),
      row(13, "011", kFail), row(14, "110", kFail), row(15, "010", kFail), row(16, "001", kFail),
      row(17, "100", kFail), row(18, "110", kFail), row(19, "111", kPass), row(20, "110", kFail),
      row(21, "010", kFail), row(22, "011", kFail), row(23, "011", kFail), row(24, "011", kFail),
      row(25, "111", kPass), row(26, "111", kPass), row(27, "111", kPass), row(28, "110", kFail),
      row(29, "111", kPass), row(30, "111", kPass),
  };

  // Blank cells are unknown marks. Opportunity 29 passed stage A but has no
  // row in the promising-opportunity table, so it is carried as all-unknown.
  tournament::Stage b;
  b.name = "B: develop promising";
  b.criteria = {"cost", "performance", "risk"};
  b.unknown_policy = tournament::UnknownPolicy::strict_fail;
  b.declared_survivors = 5;
  b.verdicts = {
      row(7, "111", kPass),  row(8, "1 1", kFail),  row(9, "111", kPass),  row(3, "101", kFail),
      row(27, "111", kPass), row(25, "110", kFail), row(26, "001", kFail), row(12, "1 1", kPass),
      row(19, "101", kFail), row(11, "110", kFail), row(30, "111", kPass), row(29, "   ", std::nullopt),
  };

  tournament::Stage c;
  c.name = "C: select exceptional";
  c.criteria = {"customizability", "market-demand", "aesthetics", "developing-time"};
  c.unknown_policy = tournament::UnknownPolicy::require_explicit;
  c.declared_survivors = 1;
  c.verdicts = {
      row(27, "0010", kFail), row(8, "1110", kFail), row(30, "1111", kPass),
      row(7, "1010", kFail),  row(9, "1010", kFail),
  };

  p.funnel.stages = {std::move(a), std::move(b), std::move(c)};
}

void add_needs(Project& p) {
  p.need_groups = {
      {"g-easy", "Convenient and easy to use"},
      {"g-durable", "Greater strength and durability"},
      {"g-control", "Easy to control while working with the patient"},
      {"g-sharing", "Sharing of information via Bluetooth connectivity"},
      {"g-battery", "Battery life time convenient for long term usage"},
      {"g-portable", "Simple and portable installation"},
      {"g-filtering", "Filtering system to reduce interfering sounds and noise"},
      {"g-amplification", "Signal amplification for high quality sound"},
      {"g-frequency", "Detects a variety of frequency ranges"},
  };
  struct N {
    const char* text;
    int importance;
    const char* group;
    const char* raw;
  };
  const N needs[20] = {
      {"The Advanced digital stethoscope has greater strength and durability.", 5, "g-durable",
       "I need the stethoscope to have greater strength and durability"},
      {"The stethoscope has high life expectancy with gigantic performance of its components", 5, "g-durable", ""},
      {"The stethoscope is more liable to wear and tear", 5, "g-durable",
       "The electronic stethoscope is more liable to wear and tear than the acoustic stethoscope"},
      {"The stethoscope power is convenient", 5, "g-battery", ""},
      {"The battery does not deplete quickly if it kept on overnight emergency room", 5, "g-battery",
       "The battery depletes quickly if it is kept on overnight in emergency rooms(mainly ambulance operators) use "
       "it nonstop so battery life is a problem"},
      {"Advanced digital stethoscope has 3 pack modes (cardiac, lung, wide range) which allows the user to "
       "auscultate specific areas more precisely",
       4, "g-control", "It would be ideal for the stethoscope to tune the sound in to particular frequencies"},
      {"The battery is rechargeable", 4, "g-battery", ""},
      {"Advanced digital stethoscope has multiple memories which makes it useful to share or review with peers.", 4,
       "g-sharing", "Multiple memories make it useful to share or review with peers"},
      {"The stethoscope is capable of recording and rewinding for a long time.", 4, "g-battery",
       "Recording time is limited to 30 seconds"},
      {"The stethoscope allows the user to use it everywhere comfortably", 4, "g-portable",
       "It would be nice if the stethoscope is small in size to be handy everywhere."},
      {"The device works on all patients including physically deformed patients", 4, "",
       "I would prefer the device to work on all patients including patients with physically deformities"},
      {"The Advanced digital stethoscope easy to set up and use", 3, "g-easy", ""},
      {"The Advanced digital stethoscope is easy to clean with alcohol.", 3, "", "They are easy to clean and keep its sanitation"},
      {"The display system which indicates time date, battery level, volume and frequency is really handy.", 3,
       "g-control",
       "I prefer to have a display system which indicates time, date, battery level, volume and frequency."},
      {"stethoscope is easy to change diaphragm/bell filters without moving scopes just by pushing a button.", 3,
       "g-easy", "It is easy to change diaphragm/bell filters without moving scopes just by pushing a button"},
      {"Advanced digital stethoscope is lightweight and it tucks securely around the neck", 3, "g-portable",
       "Most people say that it is moderately lightweight and it tucks securely around the neck"},
      {"stethoscope have a digital modality connectivity", 3, "g-sharing",
       "I would prefer the stethoscope have a digital modality setting to be adjusted via a mobile app or share "
       "readings via Bluetooth connectivity"},
      {"The Advanced digital stethoscope is easy to see the volume", 2, "g-control", ""},
      {"The installation of the digital stethoscope is simple and portable", 2, "g-portable", ""},
      {"The Advanced digital stethoscope is easy to control while working with the to the patient", 2, "g-control",
       ""},
  };
  for (int i = 0; i < 20; ++i) {
    const auto& n = needs[i];
    needspec::NeedStatement s;
    s.id = need(i + 1);
    s.raw_statement = n.raw;
    s.interpreted = n.text;
    if (*n.group) s.group = n.group;
    s.importance = n.importance;
    p.needs.push_back(std::move(s));
  }

  struct M {
    const char* name;
    int importance;
    const char* unit;
  };
  const M metrics[26] = {
      {"Time of assembly", 1, "minute"},
      {"Sound volume adjustment", 3, "Decibel"},
      {"Connectivity with other external devices", 3, "list"},
      {"Turning of the diaphragm to bell filter", 3, "subj"},
      {"The resolution of the display system", 2, "Dots/inch"},
      {"Power consumption", 3, "Watts"},
      {"Strength and durability", 5, "N/m²"},
      {"Life span expectancy", 4, "years"},
      {"Sound amplification and filtration range", 5, "Hz"},
      {"Length of the sound tubing", 3, "Cm"},
      {"Total mass of the digital stethoscope", 3, "g"},
      {"Cost for maintenance", 2, "USD"},
      {"Flexibility of wiring system", 3, "m/N"},
      {"Sound pressure level of ear piece", 4, "dB"},
      {"Maximum capacity of memory used", 2, "Gb"},
      {"Running time of the stethoscope's battery", 4, "Hr"},
      {"Cost for manufacturing", 3, "USD"},
      {"The stethoscope makes user independent", 3, "Subj"},
      {"Sensitivity of stethoscope", 4, "Radian/meter"},
      {"Special spare parts for maintenance", 2, "list"},
      {"Operating temperature of stethoscope", 3, "K"},
      {"Bell mode and diaphragm amplification capacity", 4, "hz"},
      {"Patient heart rate measurement range", 4, "Beat/min"},
      {"Automated power management system (on/off)", 2, "subj"},
      {"Bluetooth modality distance range", 3, "m"},
      {"Relative humidity", 2, "%"},
  };
  for (int i = 0; i < 26; ++i) {
    p.metrics.push_back({metric(i + 1), i + 1, metrics[i].name, metrics[i].importance, metrics[i].unit});
  }

  const std::vector<std::pair<int, std::vector<int>>> links = {
      {12, {3, 11, 20, 26}}, {13, {7, 18, 26}}, {18, {2, 18}}, {15, {4, 18}}, {14, {5}},
  };
  for (const auto& [n, ms] : links) {
    for (int m : ms) p.links.push_back({need(n), metric(m)});
  }
}

void add_benchmarks(Project& p) {
  // Values per metric row: acoustic, digital, Littmann.
  const char* values[26][3] = {
      {"none", "Several minutes", "none"},
      {"80", "70-80", "70-75"},
      {"none", "available", "available"},
      {"none", "180", "180"},
      {"none", "100", "none"},
      {"none", "4 watt", "6 watt"},
      {"weaker", "Strong", "Strong"},
      {"Max 2 yr", "5 yrs", "3 yrs"},
      {"689- 2584 Hz", "40x", "24x"},
      {"22-31", "~27", "22-27"},
      {"~180", "165-185", "175"},
      {"none", "", "none"},
      {"flexible", "Much flexible", "stiff"},
      {"none", "80-1", ""},
      {"none", "2", "none"},
      {"none", "48", "60"},
      {"150-190", "315", "~354"},
      {"none", "yes", "yes"},
      {"~45.7- 60.6%", "93-94.4%", "56- 80%"},
      {"none", "available", "none"},
      {"-32- 122", "-25 -110", "-22 - 104"},
      {"none", "10-5000", "20-2000"},
      {"50-100", "40- 175", "30-199"},
      {"none", "available", "available"},
      {"none", "12", "10"},
      {"none", "15-93", "15- 93"},
  };
  // Satisfaction dot counts; 0 marks "-" (no rating).
  const int dots[26][3] = {
      {1, 3, 4}, {0, 3, 3}, {0, 4, 3}, {0, 3, 3}, {0, 3, 1}, {0, 4, 3}, {3, 3, 3}, {2, 4, 3}, {1, 4, 3},
      {3, 3, 3}, {2, 4, 3}, {0, 3, 0}, {3, 4, 1}, {1, 3, 2}, {0, 4, 0}, {0, 3, 4}, {3, 2, 2}, {1, 4, 2},
      {2, 3, 3}, {0, 4, 0}, {1, 5, 5}, {0, 5, 3}, {1, 3, 2}, {0, 4, 4}, {0, 2, 2}, {3, 2, 2},
  };
  const std::pair<const char*, const char*> products[3] = {
      {"acoustic", "Acoustic stethoscope"},
      {"digital", "Digital stethoscope"},
      {"littmann", "3M Littmann digital stethoscope"},
  };
  for (int pi = 0; pi < 3; ++pi) {
    needspec::BenchmarkProduct b{products[pi].first, products[pi].second, {}, {}};
    for (int m = 0; m < 26; ++m) {
      b.values[metric(m + 1)] = needspec::parse_benchmark_value(values[m][pi]);
      if (dots[m][pi] > 0) b.satisfaction[metric(m + 1)] = dots[m][pi];
    }
    p.benchmarks.push_back(std::move(b));
  }
}

void add_targets(Project& p) {
  const char* cells[26][2] = {
      {"10 -15 minutes", "Less than 10 min"},
      {"75 -80 db", "80 db"},
      {"available", "available"},
      {"160 to 180 degree", "180 degree"},
      {"90 to 100", "100"},
      {"Bellow 4 watts", "4 watts"},
      {"Good strength", "Excellent"},
      {"Bellow 5 years", ">= 5 years"},
      {"30-35x", "40x"},
      {"20 to 25 inch", "27 inch"},
      {"150 to 170 g", "175"},
      {"$10- $100", "$100"},
      {"Much flexible", "Ideally flexible"},
      {"50 to 70 db", "80db"},
      {"2gb", "4gb"},
      {"48 hours", "60 hours"},
      {"$300", "$315"},
      {"Yes", "Yes"},
      {"93-94.4%", "98%"},
      {"available", "available"},
      {"0-50 degree", "-21 -100 degree"},
      {"20-4000", "10-50000"},
      {"40-175 bpm", "20- 200bpm"},
      {"available", "available"},
      {"12 meter", "15 meter"},
      {"15 -93", "0-100"},
  };
  for (int m = 0; m < 26; ++m) {
    p.targets.push_back(
        {metric(m + 1), needspec::parse_constraint(cells[m][0]), needspec::parse_constraint(cells[m][1])});
  }
}

void add_concepts(Project& p) {
  morpho::MorphChart chart;
  chart.id = "stethoscope";
  chart.name = "Concept combination table for digital stethoscope";
  chart.columns = {
      {"Transducers", {"Condenser microphone", "Fiber optics microphone", "MEMS microphone", "None"},
       "energy transducer types"},
      {"Hearing modes", {"Electronics", "Acoustic", "Dual mode"}, "stethoscope switching modes"},
      {"Head modes", {"Dual (Diaphragm and bell sides)", "Single"}, "stethoscope head modes"},
      {"Processing unit",
       {"None", "Filtration and amplification", "Analog to digital conversion", "signal recognition and clustering"},
       "signal processing unit capacities"},
      {"Sound transmission", {"Tubing(wired) earpieces", "Bluetooth Chipset", "Pure path Wireless", "FM transmitter"},
       "signal transmission and communication system"},
      {"Visualization", {"None", "Both LCD and Bluetooth devices", "Embedded LCD Screen"},
       "signal transmission and communication system"},
  };
  p.charts.push_back(chart);

  auto concept_of = [&](const char* id, const char* name, std::vector<std::string> sel) {
    p.concepts.push_back({id, name, chart.id, std::move(sel)});
  };
  concept_of("A", "Dual head acoustic stethoscope",
             {"None", "Acoustic", "Dual (Diaphragm and bell sides)", "None", "Tubing(wired) earpieces", "None"});
  concept_of("B", "Analog electronic dual head stethoscope",
             {"Condenser microphone", "Electronics", "Dual (Diaphragm and bell sides)", "Filtration and amplification",
              "Tubing(wired) earpieces", "None"});
  concept_of("C", "Single head digital stethoscope with condenser microphone",
             {"Condenser microphone", "Electronics", "Single", "Analog to digital conversion",
              "Tubing(wired) earpieces", "Embedded LCD Screen"});
  concept_of("D", "Bluetooth aided digital single head stethoscope",
             {"Condenser microphone", "Dual mode", "Single", "Analog to digital conversion", "Bluetooth Chipset",
              "Both LCD and Bluetooth devices"});
  concept_of("E", "Single head digital stethoscope with pure path wireless",
             {"MEMS microphone", "Electronics", "Single", "Filtration and amplification", "Pure path Wireless",
              "Embedded LCD Screen"});
  concept_of("F", "AI enabled digital stethoscope with FM transmitter",
             {"Condenser microphone", "Dual mode", "Single", "signal recognition and clustering", "FM transmitter",
              "Embedded LCD Screen"});
  concept_of("DF", "Advanced digital stethoscope with AI embedded",
             {"Condenser microphone", "Dual mode", "Single", "signal recognition and clustering", "Bluetooth Chipset",
              "Both LCD and Bluetooth devices"});
}

void add_matrices(Project& p) {
  selection::PughMatrix pugh;
  pugh.id = "screening";
  pugh.criteria = {"portability", "sensitivity", "transmission", "maintenance",
                   "ease-of-use", "signal-quality", "power",       "low-cost"};
  pugh.concepts = {"A", "B", "C", "D", "E", "F"};
  pugh.reference = "B";
  pugh.ratings = {
      {0, 0, -1, -1, -1, 0},  {-1, 0, -1, 1, 1, 1}, {-1, 0, 0, 1, 0, 0}, {0, 0, 0, 1, 1, 0},
      {-1, 0, 1, 1, 1, 1},    {-1, 0, 0, 0, 0, 1},  {1, 0, 0, 0, 0, 0},  {0, 0, 0, -1, -1, -1},
  };
  selection::PughDeclared pd;
  pd.plus = std::vector<int>{1, 0, 1, 4, 3, 3};
  pd.zero = std::vector<int>{3, 8, 5, 2, 3, 4};
  pd.minus = std::vector<int>{4, 0, 2, 2, 2, 1};
  pd.net = std::vector<int>{-3, 0, -1, 2, 1, 2};
  pd.rank = std::vector<int>{6, 4, 5, 1, 3, 1};
  pd.proceed = std::vector<bool>{false, false, false, true, true, true};
  pugh.declared = pd;
  p.pugh_matrices.push_back(std::move(pugh));

  selection::ScoringMatrix scoring;
  scoring.id = "scoring";
  for (auto [id, w] : std::initializer_list<std::pair<const char*, const char*>>{{"portability", "0.1"},
                                                                                {"sensitivity", "0.15"},
                                                                                {"transmission", "0.15"},
                                                                                {"maintenance", "0.1"},
                                                                                {"ease-of-use", "0.15"},
                                                                                {"signal-quality", "0.2"},
                                                                                {"power", "0.05"},
                                                                                {"low-cost", "0.1"}}) {
    scoring.criteria.push_back({id, Rational::parse(w)});
  }
  scoring.concepts = {"D", "E", "F", "DF"};
  scoring.ratings = {
      {3, 3, 4, 4}, {4, 4, 4, 4}, {4, 5, 3, 4}, {5, 4, 4, 5},
      {4, 4, 5, 5}, {3, 3, 5, 5}, {3, 2, 4, 4}, {4, 4, 3, 3},
  };
  const char* weighted[8][4] = {
      {"0.3", "0.3", "0.4", "0.4"},   {"0.6", "0.6", "0.6", "0.6"},   {"0.6", "0.75", "0.45", "0.6"},
      {"0.5", "0.4", "0.4", "0.5"},   {"0.6", "0.6", "0.75", "0.75"}, {"0.6", "0.6", "1.00", "1.00"},
      {"0.15", "0.1", "0.2", "0.2"},  {"0.4", "0.4", "0.3", "0.3"},
  };
  selection::ScoringDeclared sd;
  sd.weighted.emplace();
  for (const auto& r : weighted) {
    std::vector<std::optional<ExactDecimal>> cells;
    for (const char* cell : r) cells.emplace_back(dec(cell));
    sd.weighted->push_back(std::move(cells));
  }
  sd.totals = std::vector<ExactDecimal>{dec("3.75"), dec("3.45"), dec("4.1"), dec("4.35")};
  sd.rank = std::vector<int>{3, 4, 2, 1};
  sd.decision = std::vector<selection::Decision>{selection::Decision::drop, selection::Decision::drop,
                                                 selection::Decision::drop, selection::Decision::develop};
  scoring.declared = std::move(sd);
  p.scoring_matrices.push_back(std::move(scoring));
}

}  // namespace

Project stethoscope_project() {
  Project p;
  add_metadata(p);
  add_criteria(p);
  add_opportunities(p);
  add_funnel(p);
  add_needs(p);
  add_benchmarks(p);
  add_targets(p);
  add_concepts(p);
  add_matrices(p);
  return p;
}

}  // namespace dforge::fixtures
