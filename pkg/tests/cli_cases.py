"""Command lines covered by the golden files, with their expected exit codes."""

PRONIC_G = "{0,2,6,12,20,30,42,56}"

CASES = {
    "eval_union": (["eval", "resN(2:1) | {0,2,6}", "--window", "-3..10"], 0),
    "eval_prop11": (["eval", "prop11(27)"], 0),
    "eval_parity": (["eval", "{0,1} + res(2:0)"], 0),
    "iscomplement_yes": (["iscomplement", "{0,1}", "res(2:0)"], 0),
    "iscomplement_no": (["iscomplement", "res(2:0)", "res(2:0)", "--window", "-3..3"], 1),
    "iscomplement_windowed_gap": (["iscomplement", "prop11(9)", "{0}", "--window", "-5..5"], 2),
    "isminimal_yes": (["isminimal", "{0,1}", "res(2:0)", "--window", "-6..6"], 0),
    "isminimal_naturals": (["isminimal", "N", "-N", "--window", "-20..20"], 1),
    "isminimal_windowed": (["isminimal", "prop11(81)", "prop11(81)", "--window", "-30..30",
                            "--probe", "-10..10"], 0),
    "dependents_odd": (["dependents", "{0,1}", "res(2:0)", "--c", "1", "--window", "-5..5"], 0),
    "dependents_naturals": (["dependents", "N", "-N", "--c", "3", "--window", "-10..10"], 1),
    "search_sufficient": (["search-s", "--theorem", "sufficient", "--ep", "n=2;A={1};F={};G={0,2,6}"], 0),
    "search_necessary": (["search-s", "--theorem", "necessary", "--ep", "n=2;A={1};F={};G={0,2,6}"], 0),
    "search_empty_g": (["search-s", "--theorem", "sufficient", "--ep", "n=3;A={1,2}"], 1),
    "build_finite_w": (["build", "finite-w", "--c", "{0,1}", "--fill-to", "20"], 0),
    "build_finite_w_short": (["build", "finite-w", "--c", "{0,1}", "--fill-to", "3"], 3),
    "build_inherit": (["build", "inherit", "--ep", f"n=2;A={{1}};F={{}};G={PRONIC_G}", "--s", "{0}",
                       "--window", "-60..60"], 0),
    "extract_converse": (["extract", "converse", "--ep", "n=2;A={1};F={};G={0,2,6}", "--c", "res(4:0)",
                          "--window", "-20..20"], 0),
    "gen_prop11": (["gen", "prop11", "--limit", "27"], 0),
    "selfmac_prop11_729": (["selfmac", "prop11(729)", "--window", "-1000..1000"], 1),
    "selfmac_prop11_6561": (["selfmac", "prop11(6561)", "--window", "-1000..1000"], 0),
    "selfmac_periodic": (["selfmac", "resN(3:1)", "--window", "0..10"], 1),
    "gapstats_prop11": (["gapstats", "prop11(2187)", "--window", "0..2187"], 0),
    "error_syntax": (["eval", "{1,2"], 3),
    "error_window": (["eval", "Z", "--window", "5..1"], 3),
    "error_cap": (["selfmac", "prop11(9)", "--window", "0..2000000"], 3),
}
