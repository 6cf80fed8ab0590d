public class Build01 {
    void build(Workbook wb) {
        Sheet sheet = wb.createSheet();
        sheet.createRow(1);
    }
}
