use hkq_browser::{polygon_json, presentation_json, volume_polynomials_json};
use serde_json::Value;

const FIG2A: &str = r#"{"d":2,"normals":[[1,1],[1,0],[-1,0],[0,-1]],"offsets":["1","0","1","0"]}"#;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn presentation_lists_factored_relations() {
    let v = parse(&presentation_json(FIG2A, "HTdS1").unwrap());
    let mut factored: Vec<&str> = v["factored"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    factored.sort();
    assert_eq!(factored, ["t1*(x - t2)*t4", "t1*t3*t4", "t2*t3"]);
    assert_eq!(v["ideal"]["field"], "Q");
}

#[test]
fn volume_polynomials_of_the_example() {
    let arr = r#"{"d":2,"normals":[[1,1],[1,0],[-1,0],[0,-1]],"offsets":["0","1","1","0"]}"#;
    let v = parse(&volume_polynomials_json(arr).unwrap());
    let polys = v["polynomials"].as_array().unwrap();
    let empty = polys.iter().find(|p| p["a"].as_array().unwrap().is_empty()).unwrap();
    assert_eq!(empty["poly"], "1/2*x1^2 + x1*x3 + 1/2*x3^2 + x1*x4 + x3*x4 + 1/2*x4^2");
}

#[test]
fn polygon_reports_short_sets() {
    let v = parse(&polygon_json("1,1,3,3,3").unwrap());
    assert_eq!(v["s_prime"], serde_json::json!([[1, 2], [1, 3], [1, 4], [1, 5], [2, 3], [2, 4], [2, 5], [1, 2, 3], [1, 2, 4], [1, 2, 5]]));
    assert_eq!(v["upsilon_unit_lower_triangular"], true);
}

#[test]
fn errors_are_messages() {
    assert!(presentation_json("{", "H").is_err());
    assert!(presentation_json(FIG2A, "Q").is_err());
    assert!(polygon_json("1,1,1,1").unwrap_err().to_string().contains("{1,2}"));
}
