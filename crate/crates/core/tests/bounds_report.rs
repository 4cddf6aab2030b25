use turan_core::bounds::{bounds_report, format_rational, report_csv, Rational};

#[test]
fn fano_row_is_tight() {
    let rows = bounds_report("S3(P3)", 4, 7, true).unwrap();
    assert_eq!(rows.len(), 4);
    // every pair in at most one triple: floor(C(n,2)/3) is reached at 4, 6, 7
    let exact: Vec<Option<usize>> = rows.iter().map(|r| r.exact).collect();
    assert_eq!(exact, [Some(1), Some(2), Some(4), Some(7)]);
    let last = &rows[3];
    assert_eq!(last.lower_construction, 7);
    assert_eq!(
        last.kalai.as_ref().unwrap().value,
        Rational::from_integer(7)
    );
    assert_eq!(
        last.simpli.as_ref().unwrap().value,
        Rational::from_integer(7)
    );
    assert_eq!(
        format_rational(&last.tree_susp.as_ref().unwrap().value),
        "28/3"
    );
    assert!(last.gs.is_none() && last.fores.is_none());
}

#[test]
fn fores_row_at_13() {
    let rows = bounds_report("S3(P3+K2)", 13, 13, false).unwrap();
    let row = &rows[0];
    assert_eq!(row.lower_construction, 30);
    assert_eq!(row.fores_floor, Some(30));
    assert_eq!(
        format_rational(&row.fores.as_ref().unwrap().value),
        "361/12"
    );
    assert_eq!(row.exact, None);
    let csv = report_csv(&rows);
    assert_eq!(
        csv,
        "n,family,lower_construction,exact,simpli,kalai,tree_susp,gs,fores,fores_floor\n\
         13,S3(P3+K2),30,,,,,,361/12,30\n"
    );
}

#[test]
fn small_fores_rows_are_consistent() {
    // the unfloored bound is below the exact value at n = 5, so it is reported
    // but not enforced there
    let rows = bounds_report("S3(P3+K2)", 3, 6, true).unwrap();
    let five = &rows[2];
    assert_eq!(five.exact, Some(10));
    assert_eq!(
        format_rational(&five.fores.as_ref().unwrap().value),
        "49/12"
    );
    assert!(!five.fores.as_ref().unwrap().certified);
}

#[test]
fn gs_column_for_four_graphs() {
    let rows = bounds_report("S4(K3)", 4, 5, true).unwrap();
    assert_eq!(
        rows[0].gs.as_ref().unwrap().value,
        Rational::from_integer(1)
    );
    assert!(rows[0].gs.as_ref().unwrap().certified);
    for r in &rows {
        assert!(r.exact.is_some());
    }
}
